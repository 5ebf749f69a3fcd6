#include "msu/cardinality.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace msu {

namespace {

Count checked_mul(Count a, Count b) {
  if (a != 0 && b > std::numeric_limits<Count>::max() / a)
    throw std::invalid_argument("cardinality overflow");
  return a * b;
}

}  // namespace

Count univariate_cardinality(const LabelColumn& col, CardinalityMode mode) {
  col.validate();
  if (mode == CardinalityMode::declared) return col.declared_cardinality;
  std::vector<Label> seen(col.values);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return seen.size();
}

Count multivariate_cardinality(Count class_card,
                               std::span<const Count> feature_cards) {
  if (class_card == 0) throw std::invalid_argument("cardinality must be at least 1");
  Count product = class_card;
  for (Count c : feature_cards) {
    if (c == 0) throw std::invalid_argument("cardinality must be at least 1");
    product = checked_mul(product, c);
  }
  return product;
}

Count recommended_sample_size(Count class_card,
                              std::span<const Count> feature_cards, Count factor) {
  if (factor == 0) throw std::invalid_argument("factor must be at least 1");
  return checked_mul(factor, multivariate_cardinality(class_card, feature_cards));
}

CardinalityProfile cardinality_profile(const Dataset& ds, CardinalityMode mode) {
  if (!ds.class_index())
    throw std::invalid_argument("dataset has no class column");
  const std::size_t cls = *ds.class_index();
  CardinalityProfile prof;
  prof.class_cardinality = univariate_cardinality(ds.column(cls), mode);
  std::vector<Count> feature_cards;
  for (std::size_t i = 0; i < ds.n_cols(); ++i) {
    if (i == cls) continue;
    const Count c = univariate_cardinality(ds.column(i), mode);
    prof.per_feature.emplace_back(ds.name(i), c);
    feature_cards.push_back(c);
  }
  prof.multivariate = multivariate_cardinality(prof.class_cardinality, feature_cards);
  return prof;
}

}  // namespace msu
