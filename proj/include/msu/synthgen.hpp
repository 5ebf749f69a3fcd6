#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msu/dataset.hpp"
#include "msu/rng.hpp"

// Synthetic discrete datasets with a controlled amount of dependence between
// features and a class column:
//
//  - noninformative: feature values uniform, independent of everything.
//  - informative (univariate): the feature's value domain is split into a
//    lower and an upper half; the probability of drawing from the lower half
//    depends on the class value c (1-based index i = c + 1) as
//        P(lower | i) = 1/(i + k*C)        for even i,
//        P(lower | i) = 1 - 1/(i + k*C)    for odd i,
//    with C the class cardinality and k >= 1 the informativeness level.
//    Within the chosen half the value is uniform, so each feature carries
//    class information on its own.
//  - xor group: i.i.d. uniform binary member features whose parity determines
//    a binary class, flipped per row with a fixed noise probability. Every
//    strict subset of the members is independent of the class; only the full
//    group is informative.

namespace msu::synth {

enum class Role { noninformative, kononenko, xor_member };

struct FeatureSpec {
  std::string name;  // empty -> auto-assigned f1, f2, ...
  Label cardinality = 2;
  Role role = Role::noninformative;
  std::uint32_t k = 1;          // informativeness level (kononenko role)
  std::uint32_t xor_group = 0;  // group id (xor_member role)
};

struct GeneratorConfig {
  Label class_cardinality = 2;
  std::vector<FeatureSpec> features;
  Count n_rows = 0;
  double xor_noise = 0.05;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument on violation
};

// P(lower half | class index i), i in 1..class_count, k >= 1.
double kononenko_subset_probability(std::uint32_t class_index,
                                    std::uint32_t class_count, std::uint32_t k);

LabelColumn gen_class(Count n, Label class_cardinality, Stream& rng);

LabelColumn gen_noninformative(Count n, Label cardinality, Stream& rng);

// cardinality >= 2; lower half = values [0, cardinality/2).
LabelColumn gen_kononenko(Count n, Label cardinality, const LabelColumn& class_col,
                          Label class_cardinality, std::uint32_t k, Stream& rng);

// One binary member feature per stream in `member_rngs`, plus the noisy
// parity class drawn with `class_rng`. noise in [0, 0.5].
std::pair<std::vector<LabelColumn>, LabelColumn> gen_xor_group(
    Count n, std::span<Stream> member_rngs, double noise, Stream& class_rng);

// Full dataset for one Monte Carlo trial: feature columns in declaration
// order (auto-named f1..fm), then the class column ("class"), which is also
// the dataset's designated class. Stream i belongs to column i; the same
// (seed, trial) pair always reproduces the same bytes.
Dataset generate_dataset(const GeneratorConfig& cfg, std::uint64_t trial = 0);

}  // namespace msu::synth
