#include "msu/synthgen.hpp"

#include <set>
#include <stdexcept>

namespace msu::synth {

namespace {

std::string feature_name(const FeatureSpec& spec, std::size_t i) {
  return spec.name.empty() ? "f" + std::to_string(i + 1) : spec.name;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (n_rows == 0) throw std::invalid_argument("n_rows must be at least 1");
  if (features.empty()) throw std::invalid_argument("at least one feature required");
  if (class_cardinality == 0)
    throw std::invalid_argument("cardinality must be at least 1");
  if (!(xor_noise >= 0.0 && xor_noise <= 0.5))
    throw std::invalid_argument("xor_noise must be in [0, 0.5]");

  std::set<std::string> names;
  std::set<std::uint32_t> xor_groups;
  std::size_t xor_members = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const FeatureSpec& f = features[i];
    const std::string name = feature_name(f, i);
    if (name == "class")
      throw std::invalid_argument("feature name 'class' is reserved");
    if (!names.insert(name).second)
      throw std::invalid_argument("duplicate column name: " + name);
    switch (f.role) {
      case Role::noninformative:
        if (f.cardinality == 0)
          throw std::invalid_argument("cardinality must be at least 1");
        break;
      case Role::kononenko:
        if (f.cardinality < 2)
          throw std::invalid_argument("cardinality must be at least 2");
        if (f.k == 0) throw std::invalid_argument("k must be at least 1");
        if (class_cardinality < 2)
          throw std::invalid_argument(
              "informative features require class cardinality of at least 2");
        break;
      case Role::xor_member:
        if (f.cardinality != 2)
          throw std::invalid_argument("XOR member features must be binary");
        xor_groups.insert(f.xor_group);
        ++xor_members;
        break;
    }
  }
  if (!xor_groups.empty()) {
    if (xor_groups.size() > 1)
      throw std::invalid_argument("multiple XOR groups not supported");
    if (xor_members < 2)
      throw std::invalid_argument("XOR group needs at least 2 members");
    if (class_cardinality != 2)
      throw std::invalid_argument("XOR groups require a binary class");
  }
}

double kononenko_subset_probability(std::uint32_t class_index,
                                    std::uint32_t class_count, std::uint32_t k) {
  if (class_count == 0) throw std::invalid_argument("cardinality must be at least 1");
  if (class_index == 0 || class_index > class_count)
    throw std::invalid_argument("class index out of range");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const double denom = static_cast<double>(class_index) +
                       static_cast<double>(k) * static_cast<double>(class_count);
  return class_index % 2 == 0 ? 1.0 / denom : 1.0 - 1.0 / denom;
}

LabelColumn gen_class(Count n, Label class_cardinality, Stream& rng) {
  if (n == 0) throw std::invalid_argument("n_rows must be at least 1");
  if (class_cardinality == 0)
    throw std::invalid_argument("cardinality must be at least 1");
  LabelColumn col;
  col.declared_cardinality = class_cardinality;
  col.values.reserve(n);
  for (Count r = 0; r < n; ++r)
    col.values.push_back(static_cast<Label>(rng.next_below(class_cardinality)));
  return col;
}

LabelColumn gen_noninformative(Count n, Label cardinality, Stream& rng) {
  return gen_class(n, cardinality, rng);
}

LabelColumn gen_kononenko(Count n, Label cardinality, const LabelColumn& class_col,
                          Label class_cardinality, std::uint32_t k, Stream& rng) {
  if (n == 0) throw std::invalid_argument("n_rows must be at least 1");
  if (cardinality < 2) throw std::invalid_argument("cardinality must be at least 2");
  if (class_col.size() != n) throw std::invalid_argument("column length mismatch");
  const Label lower = cardinality / 2;
  const Label upper = cardinality - lower;
  LabelColumn col;
  col.declared_cardinality = cardinality;
  col.values.reserve(n);
  for (Count r = 0; r < n; ++r) {
    const Label cls = class_col.values[r];
    if (cls >= class_cardinality)
      throw std::invalid_argument("label out of range");
    const double p = kononenko_subset_probability(cls + 1, class_cardinality, k);
    const double u = rng.next_unit();
    const Label v = u < p ? static_cast<Label>(rng.next_below(lower))
                          : lower + static_cast<Label>(rng.next_below(upper));
    col.values.push_back(v);
  }
  return col;
}

std::pair<std::vector<LabelColumn>, LabelColumn> gen_xor_group(
    Count n, std::span<Stream> member_rngs, double noise, Stream& class_rng) {
  if (n == 0) throw std::invalid_argument("n_rows must be at least 1");
  if (member_rngs.size() < 2)
    throw std::invalid_argument("XOR group needs at least 2 members");
  if (!(noise >= 0.0 && noise <= 0.5))
    throw std::invalid_argument("xor_noise must be in [0, 0.5]");

  std::vector<LabelColumn> members(member_rngs.size());
  for (std::size_t j = 0; j < member_rngs.size(); ++j) {
    members[j] = gen_noninformative(n, 2, member_rngs[j]);
  }
  LabelColumn cls;
  cls.declared_cardinality = 2;
  cls.values.reserve(n);
  for (Count r = 0; r < n; ++r) {
    Label parity = 0;
    for (const LabelColumn& m : members) parity ^= m.values[r];
    // One noise draw per row regardless of the outcome, so the stream layout
    // does not depend on the noise value.
    if (class_rng.next_unit() < noise) parity ^= 1;
    cls.values.push_back(parity);
  }
  return {std::move(members), std::move(cls)};
}

Dataset generate_dataset(const GeneratorConfig& cfg, std::uint64_t trial) {
  cfg.validate();
  const std::size_t m = cfg.features.size();
  const auto col_stream = [&](std::size_t i) {
    return Stream(derive_stream_seed(cfg.seed, trial, i));
  };

  std::vector<std::size_t> xor_idx;
  for (std::size_t i = 0; i < m; ++i)
    if (cfg.features[i].role == Role::xor_member) xor_idx.push_back(i);

  std::vector<LabelColumn> cols(m);
  LabelColumn class_col;
  Stream class_stream = col_stream(m);

  if (!xor_idx.empty()) {
    std::vector<Stream> member_streams;
    member_streams.reserve(xor_idx.size());
    for (std::size_t i : xor_idx) member_streams.push_back(col_stream(i));
    auto [members, cls] =
        gen_xor_group(cfg.n_rows, member_streams, cfg.xor_noise, class_stream);
    for (std::size_t j = 0; j < xor_idx.size(); ++j)
      cols[xor_idx[j]] = std::move(members[j]);
    class_col = std::move(cls);
  } else {
    class_col = gen_class(cfg.n_rows, cfg.class_cardinality, class_stream);
  }

  for (std::size_t i = 0; i < m; ++i) {
    const FeatureSpec& f = cfg.features[i];
    if (f.role == Role::xor_member) continue;
    Stream s = col_stream(i);
    cols[i] = f.role == Role::noninformative
                  ? gen_noninformative(cfg.n_rows, f.cardinality, s)
                  : gen_kononenko(cfg.n_rows, f.cardinality, class_col,
                                  cfg.class_cardinality, f.k, s);
  }

  Dataset ds;
  for (std::size_t i = 0; i < m; ++i)
    ds.add_column(feature_name(cfg.features[i], i), std::move(cols[i]));
  ds.add_column("class", std::move(class_col));
  ds.set_class_index(m);
  return ds;
}

}  // namespace msu::synth
