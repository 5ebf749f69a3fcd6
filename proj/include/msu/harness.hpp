#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msu/synthgen.hpp"

// Monte Carlo harness: run many generator trials per configuration, average
// a set of dependence measures, and sweep one configuration axis to produce
// bias curves. The trial loop is OpenMP-parallel; results are stored per
// trial index and reduced serially in index order, so the output is bitwise
// identical for any thread count. A plain serial driver with the same
// contract is kept as a reference implementation for tests and benchmarks.

namespace msu::harness {

enum class SweepAxis {
  cardinality,   // every feature's cardinality takes the sweep value
  feature_count, // dataset has x copies of a single prototype feature
  sample_size    // rows per trial
};

struct MeasureSpec {
  enum class Kind {
    su_feature_class,  // SU(feature, class)
    msu_all,           // MSU over every column including the class
    msu_set            // MSU over the named columns
  };
  Kind kind = Kind::msu_all;
  std::string feature;               // su_feature_class only
  std::vector<std::string> columns;  // msu_set only
  std::string label;                 // curve name in CSV output

  static MeasureSpec su(std::string feature, std::string label);
  static MeasureSpec all(std::string label);
  static MeasureSpec set(std::vector<std::string> columns, std::string label);
};

struct ExperimentConfig {
  synth::GeneratorConfig base;
  SweepAxis axis = SweepAxis::sample_size;
  std::vector<Count> values;  // strictly increasing sweep grid
  Count trials = 1000;
  // When set, rows per trial = size_factor * |class| * prod |f_i| at each
  // sweep point instead of base.n_rows.
  bool calculated_n = false;
  Count size_factor = 10;
  std::vector<MeasureSpec> measures;
  std::uint64_t master_seed = 1;

  void validate() const;
};

struct CurvePoint {
  Count x = 0;
  double mean = 0.0;
  double stddev = 0.0;  // unbiased; 0 when trials == 1
  Count trials = 0;
};

struct SweepResult {
  std::string measure;
  std::vector<CurvePoint> points;
  std::uint64_t fingerprint = 0;  // of the whole experiment config
};

// Generator configuration at one sweep value (axis and calculated-n applied).
synth::GeneratorConfig config_at(const ExperimentConfig& cfg, Count x);

// One measure value on one generated dataset.
double eval_measure(const Dataset& ds, const MeasureSpec& m);

// Mean/stddev of each measure over `trials` generated datasets. threads = 0
// means the OpenMP default; any positive value caps the worker count without
// changing the result.
std::vector<CurvePoint> run_point(const synth::GeneratorConfig& cfg, Count trials,
                                  std::uint64_t master_seed,
                                  std::span<const MeasureSpec> measures,
                                  int threads = 0);

// Reference implementation of run_point: same contract, no parallelism.
std::vector<CurvePoint> run_point_serial(const synth::GeneratorConfig& cfg,
                                         Count trials, std::uint64_t master_seed,
                                         std::span<const MeasureSpec> measures);

// One SweepResult per measure, points in sweep order.
std::vector<SweepResult> sweep(const ExperimentConfig& cfg, int threads = 0);

struct StopTraceRow {
  Count n = 0;
  double mean = 0.0;
  std::optional<double> delta;  // |mean - previous mean|; empty on first row
};

struct StopRuleResult {
  std::optional<Count> selected;  // empty when the schedule ran out
  std::vector<StopTraceRow> trace;
};

// Walks the sample-size schedule and selects the first n whose mean MSU
// (over all columns) moved less than `threshold` since the previous schedule
// entry.
StopRuleResult stop_rule_search(const synth::GeneratorConfig& base, double threshold,
                                std::span<const Count> schedule, Count trials,
                                std::uint64_t master_seed, int threads = 0);

// {20, 40, 60, ..., 1000}: fine enough to resolve the knee of the bias curve
// near the recommended sample size, coarse enough to stay cheap.
std::vector<Count> default_stop_schedule();

// Preconfigured experiment families reproducing the figure set 1a..4b.
// Returns one ExperimentConfig per curve family in the figure.
std::vector<ExperimentConfig> figure_preset(std::string_view id);
std::vector<std::string> figure_ids();

std::uint64_t config_fingerprint(const ExperimentConfig& cfg);

}  // namespace msu::harness
