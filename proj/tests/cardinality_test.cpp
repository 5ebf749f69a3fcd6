#include "msu/cardinality.hpp"

#include <stdexcept>

#include "doctest.h"
#include "testdata.hpp"

using msu::CardinalityMode;
using msu::Count;

TEST_CASE("univariate cardinality, declared vs observed") {
  const msu::LabelColumn col{{0, 3, 3, 7}, 10};
  CHECK(msu::univariate_cardinality(col, CardinalityMode::declared) == 10);
  CHECK(msu::univariate_cardinality(col, CardinalityMode::observed) == 3);
  CHECK_THROWS_WITH_AS(
      msu::univariate_cardinality({{}, 2}, CardinalityMode::declared),
      "empty input", std::invalid_argument);
}

TEST_CASE("multivariate cardinality is the full product") {
  const Count pair[] = {2, 2};
  CHECK(msu::multivariate_cardinality(2, pair) == 8);
  const Count mixed[] = {4, 5};
  CHECK(msu::multivariate_cardinality(10, mixed) == 200);
  CHECK(msu::multivariate_cardinality(3, {}) == 3);
  CHECK_THROWS_WITH_AS(msu::multivariate_cardinality(0, pair),
                       "cardinality must be at least 1", std::invalid_argument);
  const Count with_zero[] = {2, 0};
  CHECK_THROWS_WITH_AS(msu::multivariate_cardinality(2, with_zero),
                       "cardinality must be at least 1", std::invalid_argument);
}

TEST_CASE("cardinality product overflow is detected") {
  const Count huge[] = {Count(1) << 62, 8};
  CHECK_THROWS_WITH_AS(msu::multivariate_cardinality(2, huge),
                       "cardinality overflow", std::invalid_argument);
  const Count near[] = {Count(1) << 62};
  CHECK(msu::multivariate_cardinality(2, near) == Count(1) << 63);
  CHECK_THROWS_WITH_AS(msu::recommended_sample_size(2, near, 10),
                       "cardinality overflow", std::invalid_argument);
}

TEST_CASE("recommended sample size") {
  const Count pair[] = {2, 2};
  CHECK(msu::recommended_sample_size(2, pair) == 80);
  CHECK(msu::recommended_sample_size(2, pair, 3) == 24);
  const Count mixed[] = {4, 5};
  CHECK(msu::recommended_sample_size(10, mixed) == 2000);
  CHECK_THROWS_WITH_AS(msu::recommended_sample_size(2, pair, 0),
                       "factor must be at least 1", std::invalid_argument);
}

TEST_CASE("cardinality profile of a dataset") {
  msu::Dataset ds = testdata::ref_third_value();
  const msu::CardinalityProfile declared =
      msu::cardinality_profile(ds, CardinalityMode::declared);
  CHECK(declared.class_cardinality == 2);
  REQUIRE(declared.per_feature.size() == 2);
  CHECK(declared.per_feature[0] == std::pair<std::string, Count>{"f1", 3});
  CHECK(declared.per_feature[1] == std::pair<std::string, Count>{"f2", 2});
  CHECK(declared.multivariate == 12);

  msu::Dataset gap;
  gap.add_column("f1", {{0, 9}, 10});
  gap.add_column("class", {{0, 1}, 2});
  gap.set_class_index(1);
  CHECK(msu::cardinality_profile(gap, CardinalityMode::declared).multivariate == 20);
  CHECK(msu::cardinality_profile(gap, CardinalityMode::observed).multivariate == 4);

  msu::Dataset no_class;
  no_class.add_column("a", {{0, 1}, 2});
  CHECK_THROWS_WITH_AS(msu::cardinality_profile(no_class, CardinalityMode::declared),
                       "dataset has no class column", std::invalid_argument);
}
