// msu: synthetic discrete datasets and multivariate dependence measures.
//
// Subcommands:
//   gen        write one synthetic dataset as CSV
//   measure    entropy / SU / total correlation / MSU of CSV columns
//   sweep      Monte Carlo bias curves over a configuration axis
//   samplesize recommended sample size from cardinalities
//   stoprule   empirical sample-size search by mean-MSU convergence
//
// Exit codes: 0 success, 1 usage or validation error, 2 unreadable or
// malformed data, 3 stop rule did not converge.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msu/cardinality.hpp"
#include "msu/csv.hpp"
#include "msu/harness.hpp"
#include "msu/infotheory.hpp"
#include "msu/synthgen.hpp"

namespace {

using msu::Count;
using msu::Label;

std::uint64_t env_or_default_seed() {
  const char* env = std::getenv("MSU_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw std::invalid_argument("MSU_SEED must be an unsigned integer");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_semicolon(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ';';
    out += parts[i];
  }
  return out;
}

// Feature set shared by gen and stoprule: XOR members come first (f1..fm),
// then informative features, then noninformative ones.
struct FeatureFlags {
  unsigned xor_members = 0;
  std::vector<Label> kononenko;
  std::vector<Label> noninf;
  std::uint32_t k = 1;
};

void add_feature_flags(CLI::App* cmd, FeatureFlags& ff) {
  cmd->add_option("--xor", ff.xor_members,
                  "number of XOR-group member features (binary, class = noisy parity)");
  cmd->add_option("--kononenko", ff.kononenko,
                  "cardinality of one informative feature (repeatable)")
      ->delimiter(',');
  cmd->add_option("--noninf", ff.noninf,
                  "cardinality of one noninformative feature (repeatable)")
      ->delimiter(',');
  cmd->add_option("--k", ff.k, "informativeness level of informative features")
      ->capture_default_str();
}

std::vector<msu::synth::FeatureSpec> build_features(const FeatureFlags& ff) {
  std::vector<msu::synth::FeatureSpec> out;
  for (unsigned i = 0; i < ff.xor_members; ++i) {
    msu::synth::FeatureSpec f;
    f.cardinality = 2;
    f.role = msu::synth::Role::xor_member;
    f.xor_group = 1;
    out.push_back(f);
  }
  for (Label card : ff.kononenko) {
    msu::synth::FeatureSpec f;
    f.cardinality = card;
    f.role = msu::synth::Role::kononenko;
    f.k = ff.k;
    out.push_back(f);
  }
  for (Label card : ff.noninf) {
    msu::synth::FeatureSpec f;
    f.cardinality = card;
    f.role = msu::synth::Role::noninformative;
    out.push_back(f);
  }
  return out;
}

msu::harness::MeasureSpec parse_measure_token(const std::string& tok) {
  using MS = msu::harness::MeasureSpec;
  if (tok == "msu") return MS::all("msu");
  if (tok.rfind("su:", 0) == 0) {
    const std::string name = tok.substr(3);
    if (name.empty()) throw std::invalid_argument("bad measure: " + tok);
    return MS::su(name, "SU(" + name + ";class)");
  }
  if (tok.rfind("set:", 0) == 0) {
    std::vector<std::string> cols = split(tok.substr(4), ':');
    if (cols.size() < 2 || cols.front().empty())
      throw std::invalid_argument("bad measure: " + tok);
    const std::string label = "MSU(" + join_semicolon(cols) + ")";
    return MS::set(std::move(cols), label);
  }
  throw std::invalid_argument("bad measure: " + tok);
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  FeatureFlags features;
  Label class_card = 2;
  Count rows = 0;
  double noise = 0.05;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out;
};

int run_gen(const GenOpts& o) {
  msu::synth::GeneratorConfig cfg;
  cfg.class_cardinality = o.class_card;
  cfg.features = build_features(o.features);
  cfg.n_rows = o.rows;
  cfg.xor_noise = o.noise;
  cfg.seed = o.seed_given ? o.seed : env_or_default_seed();
  const msu::Dataset ds = msu::synth::generate_dataset(cfg);
  if (o.out == "-")
    std::cout << msu::csvio::dataset_to_csv(ds);
  else
    msu::csvio::write_dataset_file(o.out, ds);
  return 0;
}

// ---------------------------------------------------------------- measure

struct MeasureOpts {
  std::string data;
  std::vector<std::string> su_pairs;
  std::vector<std::string> msu_sets;
  bool csv = false;
};

int run_measure(const MeasureOpts& o) {
  const msu::Dataset ds = o.data == "-"
                              ? msu::csvio::read_dataset(std::cin)
                              : msu::csvio::read_dataset_file(o.data);

  std::vector<std::pair<std::string, double>> lines;
  for (std::size_t c = 0; c < ds.n_cols(); ++c)
    lines.emplace_back("H(" + ds.name(c) + ")", msu::entropy(ds.column(c)));

  for (const std::string& pair : o.su_pairs) {
    const std::vector<std::string> names = split(pair, ',');
    if (names.size() != 2 || names[0].empty() || names[1].empty())
      throw std::invalid_argument("--su needs two column names: " + pair);
    const double v = msu::symmetrical_uncertainty(ds, ds.index_of(names[0]),
                                                  ds.index_of(names[1]));
    lines.emplace_back("SU(" + join_semicolon(names) + ")", v);
  }

  for (const std::string& set : o.msu_sets) {
    const std::vector<std::string> names = split(set, ',');
    if (names.size() < 2)
      throw std::invalid_argument("--msu needs at least two column names: " + set);
    std::vector<std::size_t> cols;
    cols.reserve(names.size());
    for (const std::string& n : names) cols.push_back(ds.index_of(n));
    const msu::MeasureReport rep = msu::measure_set(ds, cols);
    const std::string suffix = "(" + join_semicolon(names) + ")";
    lines.emplace_back("C" + suffix, rep.total_correlation);
    lines.emplace_back("MSU" + suffix, rep.msu);
  }

  if (o.csv) {
    std::cout << "measure,value\n";
    for (const auto& [label, v] : lines)
      std::cout << label << ',' << msu::csvio::format_fixed6(v) << '\n';
  } else {
    for (const auto& [label, v] : lines)
      std::cout << label << " = " << msu::csvio::format_fixed6(v) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepOpts {
  std::string figure;
  std::string axis;
  std::vector<Count> values;
  std::string role = "kononenko";
  unsigned n_features = 2;
  Label card = 2;
  Label class_card = 2;
  Count rows = 0;
  double noise = 0.05;
  std::uint32_t k = 1;
  bool calculated = false;
  Count factor = 10;
  std::vector<std::string> measures;
  Count trials = 1000;
  std::uint64_t seed = 1;
  bool seed_given = false;
  bool trials_given = false;
  int threads = 0;
  std::string out;
};

msu::harness::ExperimentConfig build_custom_sweep(const SweepOpts& o) {
  using namespace msu::harness;
  ExperimentConfig cfg;
  cfg.base.class_cardinality = o.class_card;
  cfg.base.n_rows = o.rows;
  cfg.base.xor_noise = o.noise;

  msu::synth::FeatureSpec proto;
  proto.cardinality = o.card;
  if (o.role == "kononenko") {
    proto.role = msu::synth::Role::kononenko;
    proto.k = o.k;
  } else if (o.role == "noninf") {
    proto.role = msu::synth::Role::noninformative;
  } else if (o.role == "xor") {
    proto.role = msu::synth::Role::xor_member;
    proto.cardinality = 2;
    proto.xor_group = 1;
  } else {
    throw std::invalid_argument("bad role: " + o.role);
  }

  if (o.axis == "cardinality") {
    cfg.axis = SweepAxis::cardinality;
  } else if (o.axis == "features") {
    cfg.axis = SweepAxis::feature_count;
  } else if (o.axis == "samplesize") {
    cfg.axis = SweepAxis::sample_size;
  } else {
    throw std::invalid_argument("bad axis: " + o.axis);
  }

  const unsigned count = cfg.axis == SweepAxis::feature_count ? 1 : o.n_features;
  cfg.base.features.assign(count, proto);
  cfg.values = o.values;
  cfg.trials = o.trials;
  cfg.calculated_n = o.calculated;
  cfg.size_factor = o.factor;
  cfg.master_seed = o.seed;
  if (o.measures.empty()) {
    cfg.measures = {MeasureSpec::all("msu")};
  } else {
    for (const std::string& tok : o.measures)
      cfg.measures.push_back(parse_measure_token(tok));
  }
  return cfg;
}

int run_sweep(SweepOpts o) {
  if (!o.seed_given) o.seed = env_or_default_seed();
  std::vector<msu::harness::SweepResult> all;
  if (!o.figure.empty()) {
    std::vector<msu::harness::ExperimentConfig> configs =
        msu::harness::figure_preset(o.figure);
    for (msu::harness::ExperimentConfig& cfg : configs) {
      if (o.trials_given) cfg.trials = o.trials;
      if (o.seed_given) cfg.master_seed = o.seed;
      std::vector<msu::harness::SweepResult> part =
          msu::harness::sweep(cfg, o.threads);
      all.insert(all.end(), part.begin(), part.end());
    }
  } else {
    if (o.axis.empty())
      throw std::invalid_argument("sweep needs --figure or --axis");
    all = msu::harness::sweep(build_custom_sweep(o), o.threads);
  }
  if (o.out == "-")
    std::cout << msu::csvio::curves_to_csv(all);
  else
    msu::csvio::write_curves_file(o.out, all);
  return 0;
}

// ---------------------------------------------------------------- samplesize

struct SampleSizeOpts {
  Label class_card = 0;
  std::vector<Count> cards;
  Count factor = 10;
  std::string data;
  std::string class_name = "class";
  bool observed = false;
};

int run_samplesize(const SampleSizeOpts& o) {
  Count n = 0;
  if (!o.data.empty()) {
    const msu::Dataset ds = o.data == "-"
                                ? msu::csvio::read_dataset(std::cin, o.class_name)
                                : msu::csvio::read_dataset_file(o.data, o.class_name);
    if (!ds.class_index())
      throw std::invalid_argument("unknown column: " + o.class_name);
    const msu::CardinalityProfile prof = msu::cardinality_profile(
        ds, o.observed ? msu::CardinalityMode::observed
                       : msu::CardinalityMode::declared);
    std::vector<Count> cards;
    for (const auto& [name, c] : prof.per_feature) cards.push_back(c);
    n = msu::recommended_sample_size(prof.class_cardinality, cards, o.factor);
  } else {
    if (o.class_card == 0 || o.cards.empty())
      throw std::invalid_argument("samplesize needs --data or --class-card with --cards");
    n = msu::recommended_sample_size(o.class_card, o.cards, o.factor);
  }
  std::printf("%llu\n", static_cast<unsigned long long>(n));
  return 0;
}

// ---------------------------------------------------------------- stoprule

struct StopRuleOpts {
  FeatureFlags features;
  Label class_card = 2;
  double noise = 0.05;
  double threshold = 0.01;
  std::vector<Count> schedule;
  Count trials = 1000;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int threads = 0;
  std::string trace;
};

int run_stoprule(StopRuleOpts o) {
  if (!o.seed_given) o.seed = env_or_default_seed();
  if (o.features.xor_members == 0 && o.features.kononenko.empty() &&
      o.features.noninf.empty())
    o.features.xor_members = 2;  // default template: noisy XOR pair

  msu::synth::GeneratorConfig base;
  base.class_cardinality = o.class_card;
  base.features = build_features(o.features);
  base.xor_noise = o.noise;
  base.n_rows = 1;  // overridden by every schedule entry

  std::vector<Count> schedule =
      o.schedule.empty() ? msu::harness::default_stop_schedule() : o.schedule;
  const msu::harness::StopRuleResult res = msu::harness::stop_rule_search(
      base, o.threshold, schedule, o.trials, o.seed, o.threads);
  if (!o.trace.empty()) msu::csvio::write_stop_trace_file(o.trace, res);
  if (!res.selected) {
    std::fprintf(stderr, "not converged\n");
    return 3;
  }
  std::printf("%llu\n", static_cast<unsigned long long>(*res.selected));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic discrete datasets and multivariate dependence measures"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* cmd_gen = app.add_subcommand("gen", "write one synthetic dataset as CSV");
  add_feature_flags(cmd_gen, gen.features);
  cmd_gen->add_option("--class-card", gen.class_card, "class cardinality")
      ->capture_default_str();
  cmd_gen->add_option("--rows", gen.rows, "number of rows")->required();
  cmd_gen->add_option("--noise", gen.noise, "XOR class flip probability")
      ->capture_default_str();
  CLI::Option* gen_seed = cmd_gen->add_option("--seed", gen.seed, "master seed");
  cmd_gen->add_option("--out", gen.out, "output CSV path, - for stdout")->required();

  MeasureOpts measure;
  CLI::App* cmd_measure =
      app.add_subcommand("measure", "measures over CSV columns");
  cmd_measure->add_option("--data", measure.data, "input CSV path, - for stdin")
      ->required();
  cmd_measure->add_option("--su", measure.su_pairs,
                          "column pair a,b for SU (repeatable)");
  cmd_measure->add_option("--msu", measure.msu_sets,
                          "column set a,b,... for C and MSU (repeatable)");
  cmd_measure->add_flag("--csv", measure.csv, "emit measure,value CSV");

  SweepOpts sweep;
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "Monte Carlo bias curves over one axis");
  cmd_sweep->add_option("--figure", sweep.figure,
                        "experiment preset (1a 1b 2a 2b 3a 3b 4a 4b)");
  cmd_sweep->add_option("--axis", sweep.axis,
                        "sweep axis: cardinality, features, samplesize");
  cmd_sweep->add_option("--values", sweep.values, "sweep grid")->delimiter(',');
  cmd_sweep->add_option("--role", sweep.role,
                        "feature role: kononenko, noninf, xor")
      ->capture_default_str();
  cmd_sweep->add_option("--n-features", sweep.n_features,
                        "feature count (non-feature axes)")
      ->capture_default_str();
  cmd_sweep->add_option("--card", sweep.card, "feature cardinality")
      ->capture_default_str();
  cmd_sweep->add_option("--class-card", sweep.class_card, "class cardinality")
      ->capture_default_str();
  cmd_sweep->add_option("--rows", sweep.rows, "rows per trial (fixed-n sweeps)");
  cmd_sweep->add_option("--noise", sweep.noise, "XOR class flip probability")
      ->capture_default_str();
  cmd_sweep->add_option("--k", sweep.k, "informativeness level")
      ->capture_default_str();
  cmd_sweep->add_flag("--calculated", sweep.calculated,
                      "rows from the sample-size rule at each point");
  cmd_sweep->add_option("--factor", sweep.factor, "sample-size rule factor")
      ->capture_default_str();
  cmd_sweep->add_option("--measure", sweep.measures,
                        "msu | su:NAME | set:A:B... (repeatable)");
  CLI::Option* sweep_trials =
      cmd_sweep->add_option("--trials", sweep.trials, "trials per point");
  CLI::Option* sweep_seed = cmd_sweep->add_option("--seed", sweep.seed, "master seed");
  cmd_sweep->add_option("--threads", sweep.threads,
                        "max worker threads (0 = default)");
  cmd_sweep->add_option("--out", sweep.out, "output CSV path, - for stdout")
      ->required();

  SampleSizeOpts samplesize;
  CLI::App* cmd_samplesize = app.add_subcommand(
      "samplesize", "recommended sample size from cardinalities");
  cmd_samplesize->add_option("--class-card", samplesize.class_card,
                             "class cardinality");
  cmd_samplesize->add_option("--cards", samplesize.cards,
                             "feature cardinalities")
      ->delimiter(',');
  cmd_samplesize->add_option("--factor", samplesize.factor,
                             "multiple of the joint cardinality")
      ->capture_default_str();
  cmd_samplesize->add_option("--data", samplesize.data,
                             "derive cardinalities from a CSV file, - for stdin");
  cmd_samplesize->add_option("--class", samplesize.class_name,
                             "class column name in --data")
      ->capture_default_str();
  cmd_samplesize->add_flag("--observed", samplesize.observed,
                           "use observed distinct values, not declared domains");

  StopRuleOpts stoprule;
  CLI::App* cmd_stoprule = app.add_subcommand(
      "stoprule", "sample-size search by mean-MSU convergence");
  add_feature_flags(cmd_stoprule, stoprule.features);
  cmd_stoprule->add_option("--class-card", stoprule.class_card, "class cardinality")
      ->capture_default_str();
  cmd_stoprule->add_option("--noise", stoprule.noise, "XOR class flip probability")
      ->capture_default_str();
  cmd_stoprule->add_option("--threshold", stoprule.threshold,
                           "mean-MSU movement threshold")
      ->capture_default_str();
  cmd_stoprule->add_option("--schedule", stoprule.schedule,
                           "sample sizes to try (default 20,40,...,1000)")
      ->delimiter(',');
  cmd_stoprule->add_option("--trials", stoprule.trials, "trials per schedule entry")
      ->capture_default_str();
  CLI::Option* stop_seed =
      cmd_stoprule->add_option("--seed", stoprule.seed, "master seed");
  cmd_stoprule->add_option("--threads", stoprule.threads,
                           "max worker threads (0 = default)");
  cmd_stoprule->add_option("--trace", stoprule.trace,
                           "write n,mean_msu,delta trace CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  gen.seed_given = gen_seed->count() > 0;
  sweep.seed_given = sweep_seed->count() > 0;
  sweep.trials_given = sweep_trials->count() > 0;
  stoprule.seed_given = stop_seed->count() > 0;

  try {
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_measure->parsed()) return run_measure(measure);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_samplesize->parsed()) return run_samplesize(samplesize);
    if (cmd_stoprule->parsed()) return run_stoprule(stoprule);
  } catch (const msu::csvio::CsvError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
