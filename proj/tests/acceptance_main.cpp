// Acceptance gate: one self-contained check per release criterion, each
// printing a PASS/FAIL line with its runtime. Exit status is the number of
// failed criteria.
//
// Criteria 5-8 stash their CSV artifacts; criterion 9 re-runs the same
// experiments under a different OpenMP thread count and requires every
// artifact to match byte for byte.

#include <omp.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "msu/cardinality.hpp"
#include "msu/csv.hpp"
#include "msu/harness.hpp"
#include "msu/infotheory.hpp"
#include "msu/synthgen.hpp"
#include "oracle.hpp"
#include "testdata.hpp"

namespace {

using msu::Count;
using msu::Dataset;
using msu::Label;
using msu::LabelColumn;
namespace harness = msu::harness;
namespace synth = msu::synth;

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& msg) {
    pass = false;
    if (detail.empty()) detail = msg;
  }
  void expect(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- shared

synth::GeneratorConfig xor_pair_config(Count n, double noise = 0.05) {
  synth::GeneratorConfig cfg;
  cfg.class_cardinality = 2;
  synth::FeatureSpec member;
  member.cardinality = 2;
  member.role = synth::Role::xor_member;
  member.xor_group = 1;
  cfg.features = {member, member};
  cfg.n_rows = n;
  cfg.xor_noise = noise;
  return cfg;
}

std::vector<std::size_t> all_columns(const Dataset& ds) {
  std::vector<std::size_t> cols(ds.n_cols());
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return cols;
}

struct CmdResult {
  int status = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = MSU_CLI_PATH " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  CmdResult res;
  if (!pipe) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
  const int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

// Artifacts kept for the cross-thread-count comparison (criterion 9).
struct Artifacts {
  std::string xor_point_csv;
  std::string stop_trace_csv;
  std::string samplesize_output;
  std::vector<std::pair<std::string, std::string>> sweep_csv;  // (name, csv)
};
Artifacts g_run0;

// ------------------------------------------------- criterion experiments

std::string make_xor_point_csv(int threads, std::vector<harness::SweepResult>* out) {
  harness::ExperimentConfig cfg;
  cfg.base = xor_pair_config(1);
  cfg.axis = harness::SweepAxis::sample_size;
  cfg.values = {100000};
  cfg.trials = 10;
  cfg.master_seed = kSeed;
  cfg.measures = {harness::MeasureSpec::su("f1", "SU(f1;class)"),
                  harness::MeasureSpec::su("f2", "SU(f2;class)"),
                  harness::MeasureSpec::all("MSU(f1;f2;class)")};
  std::vector<harness::SweepResult> results = harness::sweep(cfg, threads);
  if (out) *out = results;
  return msu::csvio::curves_to_csv(results);
}

std::string make_stop_trace_csv(int threads, harness::StopRuleResult* out) {
  const std::vector<Count> schedule = harness::default_stop_schedule();
  const harness::StopRuleResult res = harness::stop_rule_search(
      xor_pair_config(1), 0.01, schedule, 1000, kSeed, threads);
  if (out) *out = res;
  return msu::csvio::stop_trace_to_csv(res);
}

// The four rising-trend families (growing cardinality / growing feature
// count, informative and noninformative) plus the fixed-n vs calculated-n
// contrast families.
std::vector<std::pair<std::string, std::vector<harness::SweepResult>>>
run_trend_sweeps(int threads) {
  std::vector<std::pair<std::string, std::vector<harness::SweepResult>>> out;
  for (const char* id : {"2a", "2b"}) {
    std::vector<harness::SweepResult> figure;
    for (harness::ExperimentConfig cfg : harness::figure_preset(id)) {
      cfg.master_seed = kSeed;
      for (harness::SweepResult& r : harness::sweep(cfg, threads))
        figure.push_back(std::move(r));
    }
    out.emplace_back(id, std::move(figure));
  }
  for (const char* id : {"4a", "4b"}) {
    harness::ExperimentConfig cfg = harness::figure_preset(id).back();  // noninformative
    cfg.master_seed = kSeed;
    out.emplace_back(std::string(id) + "_noninformative",
                     harness::sweep(cfg, threads));
  }
  return out;
}

// ---------------------------------------------------------------- criteria

Outcome criterion_reference_values() {
  Outcome o;
  const std::vector<std::size_t> cols{0, 1, 2};

  const Dataset ind = testdata::ref_independent();
  const double m_ind = msu::msu(ind, cols);
  o.expect(m_ind == 0.0, "independent trio MSU " + fmt(m_ind) + " != 0");

  const Dataset fl = testdata::ref_flipped();
  const double m_fl = msu::msu(fl, cols);
  o.expect(std::abs(m_fl - testdata::kFlippedMsu) < 1e-12,
           "flipped trio MSU " + fmt(m_fl) + " drifted from frozen value");
  o.expect(std::abs(m_fl - oracle::msu(fl, cols)) < 1e-6,
           "flipped trio disagrees with brute force");
  o.expect(std::round(m_fl * 100.0) == 10.0,
           "flipped trio MSU does not round to 0.10");

  const Dataset third = testdata::ref_third_value();
  const double m_third = msu::msu(third, cols);
  o.expect(std::abs(m_third - testdata::kThirdMsu) < 1e-12,
           "third-value trio MSU " + fmt(m_third) + " drifted from frozen value");
  o.expect(std::abs(m_third - oracle::msu(third, cols)) < 1e-6,
           "third-value trio disagrees with brute force");
  o.expect(std::round(m_third * 100.0) == 18.0,
           "third-value trio MSU does not round to 0.18");
  return o;
}

Outcome criterion_pairwise_reduction() {
  Outcome o;
  std::mt19937_64 rng(1001);
  for (int i = 0; i < 1000; ++i) {
    const Dataset ds = testdata::random_dataset(rng, 2, 2, 50, 5);
    const std::vector<std::size_t> pair{0, 1};
    const double m = msu::msu(ds, pair);
    const double s = msu::symmetrical_uncertainty(ds, 0, 1);
    if (std::abs(m - s) >= 1e-12) {
      o.fail("dataset " + std::to_string(i) + ": |msu-su| = " + fmt(std::abs(m - s)));
      break;
    }
  }
  return o;
}

Outcome criterion_ranges_and_invariance() {
  Outcome o;
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const Dataset ds = testdata::random_dataset(rng, 2, 4, 50, 5);
    const std::vector<std::size_t> cols = all_columns(ds);
    const std::string tag = "dataset " + std::to_string(i) + ": ";

    // Ranges.
    const double m = msu::msu(ds, cols);
    const double c = msu::total_correlation(ds, cols);
    o.expect(m >= 0.0 && m <= 1.0, tag + "MSU out of [0,1]: " + fmt(m));
    o.expect(c >= 0.0, tag + "negative total correlation: " + fmt(c));
    std::vector<double> entropies;
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      const double h = msu::entropy(ds.column(j));
      entropies.push_back(h);
      const double cap = std::log2(double(ds.column(j).declared_cardinality));
      o.expect(h >= 0.0 && h <= cap + 1e-9, tag + "entropy out of range");
    }
    for (std::size_t a = 0; a < ds.n_cols() && o.pass; ++a)
      for (std::size_t b = a + 1; b < ds.n_cols(); ++b) {
        const double s = msu::symmetrical_uncertainty(ds, a, b);
        o.expect(s >= 0.0 && s <= 1.0, tag + "SU out of [0,1]: " + fmt(s));
      }
    if (!o.pass) break;

    // Row shuffle: bitwise identical measures.
    std::vector<std::size_t> perm(ds.n_rows());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Dataset shuffled;
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      LabelColumn col;
      col.declared_cardinality = ds.column(j).declared_cardinality;
      for (std::size_t r : perm) col.values.push_back(ds.column(j).values[r]);
      shuffled.add_column(ds.name(j), std::move(col));
    }
    o.expect(msu::msu(shuffled, cols) == m, tag + "row shuffle changed MSU");
    o.expect(msu::total_correlation(shuffled, cols) == c,
             tag + "row shuffle changed total correlation");
    for (std::size_t j = 0; j < ds.n_cols(); ++j)
      o.expect(msu::entropy(shuffled.column(j)) == entropies[j],
               tag + "row shuffle changed entropy");

    // Label renaming: random bijection per column.
    Dataset renamed;
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      const Label card = ds.column(j).declared_cardinality;
      std::vector<Label> mapping(card);
      std::iota(mapping.begin(), mapping.end(), Label{0});
      std::shuffle(mapping.begin(), mapping.end(), rng);
      LabelColumn col;
      col.declared_cardinality = card;
      for (Label v : ds.column(j).values) col.values.push_back(mapping[v]);
      renamed.add_column(ds.name(j), std::move(col));
    }
    o.expect(msu::msu(renamed, cols) == m, tag + "relabeling changed MSU");
    o.expect(msu::total_correlation(renamed, cols) == c,
             tag + "relabeling changed total correlation");
    for (std::size_t j = 0; j < ds.n_cols(); ++j)
      o.expect(msu::entropy(renamed.column(j)) == entropies[j],
               tag + "relabeling changed entropy");
    for (std::size_t a = 0; a < ds.n_cols() && o.pass; ++a)
      for (std::size_t b = a + 1; b < ds.n_cols(); ++b)
        o.expect(msu::symmetrical_uncertainty(renamed, a, b) ==
                     msu::symmetrical_uncertainty(ds, a, b),
                 tag + "relabeling changed SU");

    // Column reordering: both a permuted selection and a physically
    // permuted dataset.
    std::vector<std::size_t> order = cols;
    std::shuffle(order.begin(), order.end(), rng);
    o.expect(msu::msu(ds, order) == m, tag + "selection order changed MSU");
    o.expect(msu::joint_entropy(ds, order) == msu::joint_entropy(ds, cols),
             tag + "selection order changed joint entropy");
    Dataset reordered;
    for (std::size_t j : order) reordered.add_column(ds.name(j), ds.column(j));
    o.expect(msu::msu(reordered, cols) == m, tag + "column order changed MSU");
  }
  return o;
}

Outcome criterion_exhaustive_oracle() {
  Outcome o;
  long long n_checked = 0;
  const Label card_options[] = {2, 3};
  const char* col_names[] = {"c1", "c2", "c3"};

  for (std::size_t n_rows = 1; n_rows <= 4 && o.pass; ++n_rows) {
    for (std::size_t n_cols = 1; n_cols <= 3 && o.pass; ++n_cols) {
      // Column subsets of size >= 2, as index lists, reused per dataset.
      std::vector<std::vector<std::size_t>> subsets;
      for (unsigned mask = 1; mask < (1u << n_cols); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t c = 0; c < n_cols; ++c)
          if (mask & (1u << c)) subset.push_back(c);
        if (subset.size() >= 2) subsets.push_back(std::move(subset));
      }

      std::vector<std::size_t> card_pick(n_cols, 0);
      for (;;) {
        std::vector<Label> cards(n_cols);
        for (std::size_t c = 0; c < n_cols; ++c)
          cards[c] = card_options[card_pick[c]];

        // Odometer over every cell of the rows x cols value grid.
        std::vector<Label> cells(n_rows * n_cols, 0);
        for (;;) {
          Dataset ds;
          for (std::size_t c = 0; c < n_cols; ++c) {
            LabelColumn col;
            col.declared_cardinality = cards[c];
            col.values.assign(cells.begin() + c * n_rows,
                              cells.begin() + (c + 1) * n_rows);
            ds.add_column(col_names[c], std::move(col));
          }
          ++n_checked;

          // Builds the failure message only when something actually failed.
          const auto req = [&](bool ok, const char* what) {
            if (ok || !o.pass) return;
            o.fail("rows=" + std::to_string(n_rows) + " cols=" +
                   std::to_string(n_cols) + " case " + std::to_string(n_checked) +
                   ": " + what);
          };

          // Brute-force primitives, computed once; composite reference values
          // are derived below with the same arithmetic the oracle uses.
          double oh[3];
          for (std::size_t c = 0; c < n_cols; ++c) {
            oh[c] = oracle::entropy(ds, c);
            req(std::abs(msu::entropy(ds.column(c)) - oh[c]) < 1e-12,
                "entropy mismatch");
          }
          for (std::size_t x = 0; x < n_cols; ++x)
            for (std::size_t y = 0; y < n_cols; ++y) {
              if (x == y) continue;
              const double ocond = oracle::conditional_entropy(ds, x, y);
              req(std::abs(msu::conditional_entropy(ds, x, y) - ocond) < 1e-12,
                  "conditional entropy mismatch");
              const double oig = oh[x] - ocond;
              req(std::abs(msu::information_gain(ds, x, y) - oig) < 1e-12,
                  "information gain mismatch");
              const double osu =
                  (oh[x] + oh[y] == 0.0) ? 0.0 : 2.0 * oig / (oh[x] + oh[y]);
              req(std::abs(msu::symmetrical_uncertainty(ds, x, y) - osu) < 1e-12,
                  "SU mismatch");
            }
          for (const std::vector<std::size_t>& subset : subsets) {
            const double ojoint = oracle::joint_entropy(ds, subset);
            req(std::abs(msu::joint_entropy(ds, subset) - ojoint) < 1e-12,
                "joint entropy mismatch");
            double sum = 0.0;
            for (std::size_t c : subset) sum += oh[c];
            const double oc = sum - ojoint;
            req(std::abs(msu::total_correlation(ds, subset) - oc) < 1e-12,
                "total correlation mismatch");
            const double k = static_cast<double>(subset.size());
            const double omsu = (sum == 0.0) ? 0.0 : k / (k - 1.0) * oc / sum;
            req(std::abs(msu::msu(ds, subset) - omsu) < 1e-12, "MSU mismatch");
          }
          if (!o.pass) break;

          // Advance the cell odometer; digit i belongs to column i / n_rows.
          std::size_t i = 0;
          for (; i < cells.size(); ++i) {
            if (++cells[i] < cards[i / n_rows]) break;
            cells[i] = 0;
          }
          if (i == cells.size()) break;
        }

        std::size_t c = 0;
        for (; c < n_cols; ++c) {
          if (++card_pick[c] < 2) break;
          card_pick[c] = 0;
        }
        if (c == n_cols || !o.pass) break;
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(n_checked) + " datasets";
  return o;
}

Outcome criterion_xor_point() {
  Outcome o;
  std::vector<harness::SweepResult> results;
  g_run0.xor_point_csv = make_xor_point_csv(0, &results);
  const double su1 = results[0].points[0].mean;
  const double su2 = results[1].points[0].mean;
  const double m = results[2].points[0].mean;
  o.expect(std::abs(m - 0.35680) <= 0.01,
           "mean MSU " + fmt(m) + " not within 0.01 of 0.35680");
  o.expect(su1 < 0.005, "mean SU(f1;class) " + fmt(su1) + " >= 0.005");
  o.expect(su2 < 0.005, "mean SU(f2;class) " + fmt(su2) + " >= 0.005");
  if (o.pass)
    o.detail = "mean MSU " + fmt(m) + ", SU " + fmt(su1) + "/" + fmt(su2);
  return o;
}

Outcome criterion_stop_rule() {
  Outcome o;
  harness::StopRuleResult res;
  g_run0.stop_trace_csv = make_stop_trace_csv(0, &res);
  o.expect(res.selected.has_value() && *res.selected == 80,
           "stop rule selected " +
               (res.selected ? std::to_string(*res.selected) : "nothing") +
               ", expected 80");
  double delta40 = -1.0, delta80 = -1.0;
  for (const harness::StopTraceRow& row : res.trace) {
    if (row.n == 40 && row.delta) delta40 = *row.delta;
    if (row.n == 80 && row.delta) delta80 = *row.delta;
  }
  o.expect(delta40 > 0.01, "delta at n=40 is " + fmt(delta40) + ", expected > 0.01");
  o.expect(delta80 >= 0.0 && delta80 < 0.01,
           "delta at n=80 is " + fmt(delta80) + ", expected < 0.01");
  if (o.pass)
    o.detail = "delta(40) " + fmt(delta40) + ", delta(80) " + fmt(delta80);
  return o;
}

Outcome criterion_samplesize_cli() {
  Outcome o;
  const CmdResult res = run_cli("samplesize --class-card 2 --cards 2,2");
  g_run0.samplesize_output = res.output;
  o.expect(res.status == 0, "exit status " + std::to_string(res.status));
  o.expect(res.output == "80\n", "stdout was '" + res.output + "', expected '80'");
  return o;
}

Outcome criterion_bias_trends() {
  Outcome o;
  auto sweeps = run_trend_sweeps(0);
  for (auto& [name, results] : sweeps)
    g_run0.sweep_csv.emplace_back(name, msu::csvio::curves_to_csv(results));

  // Rising bias: each family of the cardinality/feature-count sweeps ends
  // higher than it starts.
  for (std::size_t fig = 0; fig < 2; ++fig) {
    for (const harness::SweepResult& family : sweeps[fig].second) {
      const double first = family.points.front().mean;
      const double last = family.points.back().mean;
      o.expect(last > first, sweeps[fig].first + " family " + family.measure +
                                 ": mean did not rise (" + fmt(first) + " -> " +
                                 fmt(last) + ")");
    }
  }

  // Fixed n = 1000 vs n from the sample-size rule, noninformative features.
  const std::vector<harness::CurvePoint>& fixed = sweeps[2].second[0].points;
  const std::vector<harness::CurvePoint>& calc = sweeps[3].second[0].points;
  for (const harness::CurvePoint& pt : calc)
    o.expect(pt.mean < 0.05, "calculated-n mean at m=" + std::to_string(pt.x) +
                                 " is " + fmt(pt.mean) + ", expected < 0.05");
  const double fixed_last = fixed.back().mean;
  const double calc_last = calc.back().mean;
  o.expect(fixed_last >= 2.0 * calc_last,
           "fixed-n mean " + fmt(fixed_last) + " not >= 2x calculated-n mean " +
               fmt(calc_last) + " at m=12");
  if (o.pass)
    o.detail = "m=12 contrast " + fmt(fixed_last) + " vs " + fmt(calc_last);
  return o;
}

Outcome criterion_byte_stability() {
  Outcome o;

  o.expect(make_xor_point_csv(4, nullptr) == g_run0.xor_point_csv,
           "XOR point CSV differs across thread counts");
  o.expect(make_stop_trace_csv(4, nullptr) == g_run0.stop_trace_csv,
           "stop-rule trace CSV differs across thread counts");

  const CmdResult res = run_cli("samplesize --class-card 2 --cards 2,2");
  o.expect(res.output == g_run0.samplesize_output,
           "samplesize output differs across runs");

  auto rerun = run_trend_sweeps(4);
  o.expect(rerun.size() == g_run0.sweep_csv.size(), "sweep artifact count differs");
  for (std::size_t i = 0; i < rerun.size() && o.pass; ++i) {
    const std::string csv = msu::csvio::curves_to_csv(rerun[i].second);
    o.expect(csv == g_run0.sweep_csv[i].second,
             "sweep CSV '" + rerun[i].first + "' differs across thread counts");
  }
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
  double budget_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"golden reference MSU values", criterion_reference_values, 1.0},
      {"two-variable MSU reduces to SU", criterion_pairwise_reduction, 5.0},
      {"ranges and exact invariances", criterion_ranges_and_invariance, 10.0},
      {"exhaustive brute-force equivalence", criterion_exhaustive_oracle, 30.0},
      {"noisy XOR pair at n=100000", criterion_xor_point, 60.0},
      {"stop rule selects n=80", criterion_stop_rule, 60.0},
      {"samplesize CLI prints 80", criterion_samplesize_cli, 10.0},
      {"trial-averaged bias trends", criterion_bias_trends, 600.0},
      {"byte-identical CSV artifacts", criterion_byte_stability, 900.0},
  };

  int failures = 0;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    const double t0 = omp_get_wtime();
    Outcome o = c.check();
    const double elapsed = omp_get_wtime() - t0;
    if (elapsed >= c.budget_seconds)
      o.fail("runtime " + fmt(elapsed) + "s exceeds budget " +
             fmt(c.budget_seconds) + "s");
    std::printf("[%d] %-38s %s (%.2fs)%s%s\n", idx, c.name,
                o.pass ? "PASS" : "FAIL", elapsed, o.detail.empty() ? "" : " - ",
                o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
  return failures;
}
