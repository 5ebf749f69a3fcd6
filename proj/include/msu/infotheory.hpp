#pragma once

#include <map>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "msu/dataset.hpp"

// Plug-in (empirical frequency) information measures over discrete columns.
// All entropies are in bits (log base 2) and use observed frequencies only;
// empty cells of the value domain contribute nothing.
//
// Sums are evaluated in a canonical order (ascending by count, resp. by
// marginal entropy), so every measure is bitwise invariant under row
// shuffles, label renamings, and column reorderings — not merely up to
// rounding.

namespace msu {

// Joint occurrence counts over a column selection. Dense mixed-radix storage
// when the cardinality product is small, sorted-map fallback otherwise; both
// enumerate cells in a deterministic order.
class JointCounts {
 public:
  Count total() const { return total_; }
  const std::vector<Label>& cardinalities() const { return cards_; }
  std::size_t n_nonzero() const;
  Count at(std::span<const Label> cell) const;

  // Counts of the occupied cells (order unspecified but deterministic).
  std::vector<Count> nonzero_counts() const;
  // Occupied cells with their counts, sorted lexicographically by cell.
  std::vector<std::pair<std::vector<Label>, Count>> cells() const;

 private:
  friend JointCounts joint_counts(const Dataset&, std::span<const std::size_t>);

  bool dense_ = true;
  std::vector<Label> cards_;
  std::vector<Count> strides_;                  // dense mode only
  std::vector<Count> dense_counts_;             // dense mode only
  std::map<std::vector<Label>, Count> sparse_;  // fallback
  Count total_ = 0;
};

// H(X) of a single column.
double entropy(const LabelColumn& col);

// Tabulates joint occurrences over the selected columns. The selection must
// be non-empty, in range, and free of duplicates.
JointCounts joint_counts(const Dataset& ds, std::span<const std::size_t> cols);

// H of the joint distribution over the selected columns.
double joint_entropy(const Dataset& ds, std::span<const std::size_t> cols);

// H(X|Y) = H(X,Y) - H(Y), for distinct column positions x and y.
double conditional_entropy(const Dataset& ds, std::size_t x, std::size_t y);

// IG(X;Y) = H(X) - H(X|Y); symmetric in its arguments up to rounding.
double information_gain(const Dataset& ds, std::size_t x, std::size_t y);

// SU(X,Y) = 2 * IG(X;Y) / (H(X) + H(Y)), defined as 0 when both entropies
// vanish. Always in [0, 1].
double symmetrical_uncertainty(const Dataset& ds, std::size_t x, std::size_t y);

// Total correlation C(X1..Xk) = sum H(Xi) - H(X1..Xk), k >= 2. Nonnegative.
double total_correlation(const Dataset& ds, std::span<const std::size_t> cols);

// Multivariate symmetrical uncertainty over k >= 2 columns:
//   MSU = (k / (k - 1)) * C / sum H(Xi),
// 0 when all entropies vanish. Always in [0, 1]; equals SU at k = 2.
double msu(const Dataset& ds, std::span<const std::size_t> cols);

// Every measure for one column set: per-column entropies, SU for each pair
// within the set, and the set's total correlation and MSU.
struct MeasureReport {
  std::vector<std::size_t> columns;
  std::vector<double> entropies;  // aligned with columns
  // (position in `columns`, position in `columns`, SU value)
  std::vector<std::tuple<std::size_t, std::size_t, double>> su_pairs;
  double total_correlation = 0.0;
  double msu = 0.0;
};

MeasureReport measure_set(const Dataset& ds, std::span<const std::size_t> cols);

}  // namespace msu
