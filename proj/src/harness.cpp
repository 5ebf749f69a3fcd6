#include "msu/harness.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "msu/cardinality.hpp"
#include "msu/infotheory.hpp"

namespace msu::harness {

MeasureSpec MeasureSpec::su(std::string feature, std::string label) {
  MeasureSpec m;
  m.kind = Kind::su_feature_class;
  m.feature = std::move(feature);
  m.label = std::move(label);
  return m;
}

MeasureSpec MeasureSpec::all(std::string label) {
  MeasureSpec m;
  m.kind = Kind::msu_all;
  m.label = std::move(label);
  return m;
}

MeasureSpec MeasureSpec::set(std::vector<std::string> columns, std::string label) {
  MeasureSpec m;
  m.kind = Kind::msu_set;
  m.columns = std::move(columns);
  m.label = std::move(label);
  return m;
}

void ExperimentConfig::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep values must not be empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      throw std::invalid_argument("sweep values must be strictly increasing");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (measures.empty()) throw std::invalid_argument("at least one measure required");
  for (const MeasureSpec& m : measures) {
    if (m.label.empty()) throw std::invalid_argument("measure label must not be empty");
    if (m.label.find_first_of(",\"\r\n") != std::string::npos)
      throw std::invalid_argument("measure label must not contain CSV delimiters");
  }
  if (axis == SweepAxis::feature_count && base.features.size() != 1)
    throw std::invalid_argument("feature_count sweep needs a single prototype feature");
  if (axis == SweepAxis::cardinality)
    for (const synth::FeatureSpec& f : base.features)
      if (f.role == synth::Role::xor_member)
        throw std::invalid_argument("cardinality sweep cannot include XOR features");
  if (axis == SweepAxis::sample_size && calculated_n)
    throw std::invalid_argument(
        "calculated sample size cannot combine with a sample-size sweep");
  if (calculated_n && size_factor == 0)
    throw std::invalid_argument("factor must be at least 1");
  for (Count x : values) config_at(*this, x);  // throws on any bad grid point
}

synth::GeneratorConfig config_at(const ExperimentConfig& cfg, Count x) {
  synth::GeneratorConfig g = cfg.base;
  switch (cfg.axis) {
    case SweepAxis::sample_size:
      g.n_rows = x;
      break;
    case SweepAxis::cardinality:
      if (x > std::numeric_limits<Label>::max())
        throw std::invalid_argument("cardinality too large");
      for (synth::FeatureSpec& f : g.features) f.cardinality = static_cast<Label>(x);
      break;
    case SweepAxis::feature_count: {
      if (g.features.empty())
        throw std::invalid_argument("feature_count sweep needs a single prototype feature");
      synth::FeatureSpec proto = g.features.front();
      proto.name.clear();  // replicas take auto names f1..fx
      g.features.assign(x, proto);
      break;
    }
  }
  if (cfg.calculated_n) {
    std::vector<Count> cards;
    cards.reserve(g.features.size());
    for (const synth::FeatureSpec& f : g.features) cards.push_back(f.cardinality);
    g.n_rows = recommended_sample_size(g.class_cardinality, cards, cfg.size_factor);
  }
  g.validate();
  return g;
}

double eval_measure(const Dataset& ds, const MeasureSpec& m) {
  switch (m.kind) {
    case MeasureSpec::Kind::su_feature_class: {
      if (!ds.class_index())
        throw std::invalid_argument("dataset has no class column");
      return symmetrical_uncertainty(ds, ds.index_of(m.feature), *ds.class_index());
    }
    case MeasureSpec::Kind::msu_all: {
      std::vector<std::size_t> cols(ds.n_cols());
      std::iota(cols.begin(), cols.end(), std::size_t{0});
      return msu(ds, cols);
    }
    case MeasureSpec::Kind::msu_set: {
      std::vector<std::size_t> cols;
      cols.reserve(m.columns.size());
      for (const std::string& name : m.columns) cols.push_back(ds.index_of(name));
      return msu(ds, cols);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// results is a measures.size() x trials matrix, row-major by measure.
void run_one_trial(const synth::GeneratorConfig& cfg, Count trials, Count t,
                   std::uint64_t master_seed, std::span<const MeasureSpec> measures,
                   double* results) {
  synth::GeneratorConfig c = cfg;
  c.seed = master_seed;
  const Dataset ds = synth::generate_dataset(c, t);
  for (std::size_t j = 0; j < measures.size(); ++j)
    results[j * trials + t] = eval_measure(ds, measures[j]);
}

// Catches configuration errors (unknown measure columns, bad selections)
// before the parallel loop, where an exception would be fatal.
void preflight(const synth::GeneratorConfig& cfg, Count trials,
               std::span<const MeasureSpec> measures) {
  cfg.validate();
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (measures.empty()) throw std::invalid_argument("at least one measure required");
  synth::GeneratorConfig c = cfg;
  const Dataset probe = synth::generate_dataset(c, 0);
  for (const MeasureSpec& m : measures) eval_measure(probe, m);
}

std::vector<CurvePoint> summarize(const synth::GeneratorConfig& cfg, Count trials,
                                  std::span<const MeasureSpec> measures,
                                  const std::vector<double>& results) {
  std::vector<CurvePoint> out(measures.size());
  for (std::size_t j = 0; j < measures.size(); ++j) {
    const double* xs = results.data() + j * trials;
    double sum = 0.0;
    for (Count t = 0; t < trials; ++t) sum += xs[t];
    const double mean = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (Count t = 0; t < trials; ++t) {
      const double d = xs[t] - mean;
      ss += d * d;
    }
    const double var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;
    out[j] = CurvePoint{cfg.n_rows, mean, std::sqrt(var), trials};
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> run_point(const synth::GeneratorConfig& cfg, Count trials,
                                  std::uint64_t master_seed,
                                  std::span<const MeasureSpec> measures,
                                  int threads) {
  preflight(cfg, trials, measures);
  std::vector<double> results(measures.size() * trials);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (long long t = 0; t < static_cast<long long>(trials); ++t)
    run_one_trial(cfg, trials, static_cast<Count>(t), master_seed, measures,
                  results.data());
  return summarize(cfg, trials, measures, results);
}

std::vector<CurvePoint> run_point_serial(const synth::GeneratorConfig& cfg,
                                         Count trials, std::uint64_t master_seed,
                                         std::span<const MeasureSpec> measures) {
  preflight(cfg, trials, measures);
  std::vector<double> results(measures.size() * trials);
  for (Count t = 0; t < trials; ++t)
    run_one_trial(cfg, trials, t, master_seed, measures, results.data());
  return summarize(cfg, trials, measures, results);
}

std::vector<SweepResult> sweep(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const std::uint64_t fp = config_fingerprint(cfg);
  std::vector<SweepResult> out(cfg.measures.size());
  for (std::size_t j = 0; j < cfg.measures.size(); ++j) {
    out[j].measure = cfg.measures[j].label;
    out[j].fingerprint = fp;
    out[j].points.reserve(cfg.values.size());
  }
  for (Count x : cfg.values) {
    const synth::GeneratorConfig g = config_at(cfg, x);
    std::vector<CurvePoint> pts =
        run_point(g, cfg.trials, cfg.master_seed, cfg.measures, threads);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      pts[j].x = x;
      out[j].points.push_back(pts[j]);
    }
  }
  return out;
}

StopRuleResult stop_rule_search(const synth::GeneratorConfig& base, double threshold,
                                std::span<const Count> schedule, Count trials,
                                std::uint64_t master_seed, int threads) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (schedule.size() < 2)
    throw std::invalid_argument("schedule needs at least two entries");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("schedule must be strictly increasing");

  const MeasureSpec m[] = {MeasureSpec::all("MSU")};
  StopRuleResult res;
  double prev = 0.0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    synth::GeneratorConfig g = base;
    g.n_rows = schedule[i];
    const CurvePoint pt = run_point(g, trials, master_seed, m, threads)[0];
    StopTraceRow row;
    row.n = schedule[i];
    row.mean = pt.mean;
    if (i > 0) row.delta = std::abs(pt.mean - prev);
    res.trace.push_back(row);
    if (row.delta && *row.delta < threshold) {
      res.selected = schedule[i];
      return res;
    }
    prev = pt.mean;
  }
  return res;
}

std::vector<Count> default_stop_schedule() {
  std::vector<Count> s;
  for (Count n = 20; n <= 1000; n += 20) s.push_back(n);
  return s;
}

namespace {

synth::FeatureSpec nonf(Label card) {
  synth::FeatureSpec f;
  f.cardinality = card;
  f.role = synth::Role::noninformative;
  return f;
}

synth::FeatureSpec kon(Label card, std::uint32_t k = 1) {
  synth::FeatureSpec f;
  f.cardinality = card;
  f.role = synth::Role::kononenko;
  f.k = k;
  return f;
}

synth::FeatureSpec xorm() {
  synth::FeatureSpec f;
  f.cardinality = 2;
  f.role = synth::Role::xor_member;
  f.xor_group = 1;
  return f;
}

std::vector<Count> doubling(Count from, Count to) {
  std::vector<Count> v;
  for (Count x = from; x <= to; x *= 2) v.push_back(x);
  return v;
}

std::vector<Count> range_by(Count from, Count to, Count step) {
  std::vector<Count> v;
  for (Count x = from; x <= to; x += step) v.push_back(x);
  return v;
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b"};
}

std::vector<ExperimentConfig> figure_preset(std::string_view id) {
  using MS = MeasureSpec;
  ExperimentConfig c;

  if (id == "1a") {
    // One informative + one noninformative feature, 10 classes, growing
    // feature cardinality at fixed n: SU of the noise feature and MSU of the
    // pair inflate with cardinality while SU of the informative feature decays.
    c.base.class_cardinality = 10;
    c.base.n_rows = 1000;
    c.base.features = {kon(2), nonf(2)};
    c.axis = SweepAxis::cardinality;
    c.values = {2, 4, 5, 8, 10, 16, 20, 32, 64};
    c.measures = {MS::su("f1", "SU(f1;class)"), MS::su("f2", "SU(f2;class)"),
                  MS::all("MSU(f1;f2;class)")};
    return {c};
  }
  if (id == "1b") {
    // Noisy XOR pair over growing sample size: the individually useless
    // members show near-zero SU while MSU of the pair converges well above 0.
    c.base.class_cardinality = 2;
    c.base.features = {xorm(), xorm()};
    c.axis = SweepAxis::sample_size;
    c.values = doubling(10, 10240);
    c.measures = {MS::su("f1", "SU(f1;class)"), MS::su("f2", "SU(f2;class)"),
                  MS::all("MSU(f1;f2;class)")};
    return {c};
  }
  if (id == "2a" || id == "2b") {
    // Estimation bias of MSU on informative (2a) vs noninformative (2b)
    // features: growing cardinality of a fixed pair, and growing count of
    // binary features, both at n = 5000.
    const bool informative = id == "2a";
    ExperimentConfig dotted;
    dotted.base.class_cardinality = 2;
    dotted.base.n_rows = 5000;
    dotted.base.features = informative
                               ? std::vector<synth::FeatureSpec>{kon(4), kon(4)}
                               : std::vector<synth::FeatureSpec>{nonf(4), nonf(4)};
    dotted.axis = SweepAxis::cardinality;
    dotted.values = {4, 8, 16, 32, 64};
    dotted.measures = {MS::all("msu_2features_varying_cardinality")};

    ExperimentConfig solid;
    solid.base.class_cardinality = 2;
    solid.base.n_rows = 5000;
    solid.base.features = {informative ? kon(2) : nonf(2)};
    solid.axis = SweepAxis::feature_count;
    solid.values = range_by(4, 12, 1);
    solid.measures = {MS::all("msu_binary_varying_count")};
    return {dotted, solid};
  }
  if (id == "3a" || id == "3b") {
    // Informative vs noninformative pair as the sample grows (3a) and as
    // cardinality grows with n tied to the sample-size rule (3b).
    ExperimentConfig inf;
    inf.base.class_cardinality = 2;
    inf.measures = {MS::all("msu_informative_pair")};
    ExperimentConfig non = inf;
    non.measures = {MS::all("msu_noninformative_pair")};
    if (id == "3a") {
      inf.base.features = {kon(2), kon(2)};
      non.base.features = {nonf(2), nonf(2)};
      inf.axis = non.axis = SweepAxis::sample_size;
      inf.values = non.values = doubling(10, 10240);
    } else {
      inf.base.features = {kon(4), kon(4)};
      non.base.features = {nonf(4), nonf(4)};
      inf.axis = non.axis = SweepAxis::cardinality;
      inf.values = non.values = {4, 8, 16, 32, 64};
      inf.calculated_n = non.calculated_n = true;
    }
    return {inf, non};
  }
  if (id == "4a" || id == "4b") {
    // Growing number of binary features under a fixed n = 1000 (4a) vs n from
    // the sample-size rule (4b), for univariately informative, jointly
    // informative (noisy parity), and noninformative features.
    const bool calculated = id == "4b";
    ExperimentConfig uni;
    uni.base.class_cardinality = 2;
    uni.base.n_rows = 1000;
    uni.axis = SweepAxis::feature_count;
    uni.values = range_by(4, 12, 1);
    uni.calculated_n = calculated;
    ExperimentConfig multi = uni;
    ExperimentConfig non = uni;
    uni.base.features = {kon(2)};
    uni.measures = {MS::all("msu_informative_univariate")};
    multi.base.features = {xorm()};
    multi.measures = {MS::all("msu_informative_multivariate")};
    non.base.features = {nonf(2)};
    non.measures = {MS::all("msu_noninformative")};
    return {uni, multi, non};
  }
  throw std::invalid_argument("unknown figure id: " + std::string(id));
}

namespace {

void fnv_append(std::uint64_t& h, std::string_view s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
}

void fnv_append_num(std::uint64_t& h, Count v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
  fnv_append(h, buf);
  fnv_append(h, ";");
}

const char* role_name(synth::Role r) {
  switch (r) {
    case synth::Role::noninformative: return "noninformative";
    case synth::Role::kononenko: return "kononenko";
    case synth::Role::xor_member: return "xor";
  }
  return "?";
}

const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::cardinality: return "cardinality";
    case SweepAxis::feature_count: return "feature_count";
    case SweepAxis::sample_size: return "sample_size";
  }
  return "?";
}

}  // namespace

std::uint64_t config_fingerprint(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  fnv_append(h, "axis=");
  fnv_append(h, axis_name(cfg.axis));
  fnv_append(h, ";values=");
  for (Count v : cfg.values) fnv_append_num(h, v);
  fnv_append(h, "trials=");
  fnv_append_num(h, cfg.trials);
  fnv_append(h, "calculated=");
  fnv_append_num(h, cfg.calculated_n ? 1 : 0);
  fnv_append(h, "factor=");
  fnv_append_num(h, cfg.size_factor);
  fnv_append(h, "seed=");
  fnv_append_num(h, cfg.master_seed);
  fnv_append(h, "class_card=");
  fnv_append_num(h, cfg.base.class_cardinality);
  fnv_append(h, "rows=");
  fnv_append_num(h, cfg.base.n_rows);
  char noise[40];
  std::snprintf(noise, sizeof(noise), "noise=%.17g;", cfg.base.xor_noise);
  fnv_append(h, noise);
  fnv_append(h, "features=");
  for (std::size_t i = 0; i < cfg.base.features.size(); ++i) {
    const synth::FeatureSpec& f = cfg.base.features[i];
    fnv_append(h, role_name(f.role));
    fnv_append(h, ":");
    fnv_append_num(h, f.cardinality);
    fnv_append_num(h, f.k);
    fnv_append_num(h, f.xor_group);
    fnv_append(h, f.name.empty() ? "f" + std::to_string(i + 1) : f.name);
    fnv_append(h, "|");
  }
  fnv_append(h, ";measures=");
  for (const MeasureSpec& m : cfg.measures) {
    switch (m.kind) {
      case MeasureSpec::Kind::su_feature_class: fnv_append(h, "su:"); break;
      case MeasureSpec::Kind::msu_all: fnv_append(h, "msu_all:"); break;
      case MeasureSpec::Kind::msu_set: fnv_append(h, "msu_set:"); break;
    }
    fnv_append(h, m.feature);
    fnv_append(h, ":");
    for (const std::string& c : m.columns) {
      fnv_append(h, c);
      fnv_append(h, ",");
    }
    fnv_append(h, ":");
    fnv_append(h, m.label);
    fnv_append(h, "|");
  }
  return h;
}

}  // namespace msu::harness
