#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msu/dataset.hpp"

// Value-domain sizes and the derived sample-size recommendation: a joint
// distribution over features and class has |class| * prod |f_i| cells, and a
// frequency estimate needs a fixed multiple of that many rows before the
// small-sample bias of dependence measures dies down.

namespace msu {

enum class CardinalityMode {
  declared,  // the column's stated domain size
  observed   // number of distinct values actually present
};

struct CardinalityProfile {
  std::vector<std::pair<std::string, Count>> per_feature;
  Count class_cardinality = 1;
  Count multivariate = 1;  // class_cardinality * product of feature cards
};

Count univariate_cardinality(const LabelColumn& col, CardinalityMode mode);

// |class| * prod |f_i|; throws "cardinality overflow" when the product does
// not fit in 64 bits.
Count multivariate_cardinality(Count class_card, std::span<const Count> feature_cards);

// factor * multivariate cardinality, same overflow rule.
Count recommended_sample_size(Count class_card, std::span<const Count> feature_cards,
                              Count factor = 10);

// Profile of a dataset with a designated class column; every other column
// counts as a feature.
CardinalityProfile cardinality_profile(const Dataset& ds, CardinalityMode mode);

}  // namespace msu
