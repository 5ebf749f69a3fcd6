#include "msu/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace msu {

namespace {

// Range violations up to this slack are rounding noise and get clamped;
// anything larger is a genuine implementation bug.
constexpr double kSlack = 1e-12;

double clamp_range(double v, double lo, double hi, const char* what) {
  if (v < lo - kSlack || v > hi + kSlack)
    throw std::logic_error(std::string(what) + " out of range");
  return std::min(std::max(v, lo), hi);
}

// Entropy in bits of the distribution given by nonzero cell counts.
// Counts are summed in ascending order, so the result depends only on the
// multiset of counts — this is what makes shuffle/relabel/reorder
// invariance exact rather than approximate.
double entropy_of_counts(std::vector<Count> counts, Count total) {
  if (total == 0) throw std::invalid_argument("empty input");
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (Count c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

// Per-column entropies plus the joint entropy, shared by C and MSU.
struct SetCore {
  std::vector<double> entropies;
  double joint = 0.0;
};

SetCore set_core(const Dataset& ds, std::span<const std::size_t> cols) {
  JointCounts jc = joint_counts(ds, cols);
  SetCore core;
  core.entropies.reserve(cols.size());
  for (std::size_t c : cols) core.entropies.push_back(entropy(ds.column(c)));
  core.joint = entropy_of_counts(jc.nonzero_counts(), jc.total());
  return core;
}

// Ascending-order sum: exact under permutations of the inputs.
double sorted_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace

std::size_t JointCounts::n_nonzero() const {
  if (!dense_) return sparse_.size();
  std::size_t k = 0;
  for (Count c : dense_counts_)
    if (c > 0) ++k;
  return k;
}

Count JointCounts::at(std::span<const Label> cell) const {
  if (cell.size() != cards_.size()) throw std::invalid_argument("bad selection");
  for (std::size_t i = 0; i < cell.size(); ++i)
    if (cell[i] >= cards_[i]) throw std::invalid_argument("label out of range");
  if (dense_) {
    Count idx = 0;
    for (std::size_t i = 0; i < cell.size(); ++i) idx += strides_[i] * cell[i];
    return dense_counts_[idx];
  }
  auto it = sparse_.find(std::vector<Label>(cell.begin(), cell.end()));
  return it == sparse_.end() ? 0 : it->second;
}

std::vector<Count> JointCounts::nonzero_counts() const {
  std::vector<Count> out;
  if (dense_) {
    for (Count c : dense_counts_)
      if (c > 0) out.push_back(c);
  } else {
    out.reserve(sparse_.size());
    for (const auto& [cell, c] : sparse_) out.push_back(c);
  }
  return out;
}

std::vector<std::pair<std::vector<Label>, Count>> JointCounts::cells() const {
  std::vector<std::pair<std::vector<Label>, Count>> out;
  if (dense_) {
    for (Count idx = 0; idx < dense_counts_.size(); ++idx) {
      if (dense_counts_[idx] == 0) continue;
      std::vector<Label> cell(cards_.size());
      for (std::size_t i = 0; i < cards_.size(); ++i)
        cell[i] = static_cast<Label>((idx / strides_[i]) % cards_[i]);
      out.emplace_back(std::move(cell), dense_counts_[idx]);
    }
    std::sort(out.begin(), out.end());
  } else {
    out.assign(sparse_.begin(), sparse_.end());
  }
  return out;
}

JointCounts joint_counts(const Dataset& ds, std::span<const std::size_t> cols) {
  if (cols.empty()) throw std::invalid_argument("bad selection");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] >= ds.n_cols()) throw std::invalid_argument("bad selection");
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      if (cols[i] == cols[j]) throw std::invalid_argument("bad selection");
  }
  const std::size_t n = ds.n_rows();
  if (n == 0) throw std::invalid_argument("empty input");

  JointCounts jc;
  jc.total_ = n;
  jc.cards_.reserve(cols.size());
  for (std::size_t c : cols) jc.cards_.push_back(ds.column(c).declared_cardinality);

  // Cardinality product with overflow guard; first column varies fastest.
  Count product = 1;
  bool overflow = false;
  std::vector<Count> strides(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    strides[i] = product;
    const Count card = jc.cards_[i];
    if (!overflow && product > std::numeric_limits<Count>::max() / card)
      overflow = true;
    if (!overflow) product *= card;
  }
  constexpr Count kDenseCells = Count(1) << 22;
  jc.dense_ = !overflow && product <= kDenseCells && product <= 256 * Count(n);

  if (jc.dense_) {
    jc.strides_ = std::move(strides);
    jc.dense_counts_.assign(product, 0);
    for (std::size_t r = 0; r < n; ++r) {
      Count idx = 0;
      for (std::size_t i = 0; i < cols.size(); ++i)
        idx += jc.strides_[i] * ds.column(cols[i]).values[r];
      ++jc.dense_counts_[idx];
    }
  } else {
    std::vector<Label> cell(cols.size());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        cell[i] = ds.column(cols[i]).values[r];
      ++jc.sparse_[cell];
    }
  }
  return jc;
}

double entropy(const LabelColumn& col) {
  if (col.values.empty()) throw std::invalid_argument("empty input");
  const std::size_t n = col.values.size();
  std::vector<Count> counts;
  if (col.declared_cardinality <= std::max<Count>(1024, 4 * Count(n))) {
    std::vector<Count> bins(col.declared_cardinality, 0);
    for (Label v : col.values) {
      if (v >= col.declared_cardinality)
        throw std::invalid_argument("label out of range");
      ++bins[v];
    }
    for (Count c : bins)
      if (c > 0) counts.push_back(c);
  } else {
    std::unordered_map<Label, Count> bins;
    for (Label v : col.values) {
      if (v >= col.declared_cardinality)
        throw std::invalid_argument("label out of range");
      ++bins[v];
    }
    counts.reserve(bins.size());
    for (const auto& [v, c] : bins) counts.push_back(c);
  }
  return entropy_of_counts(std::move(counts), n);
}

double joint_entropy(const Dataset& ds, std::span<const std::size_t> cols) {
  JointCounts jc = joint_counts(ds, cols);
  return entropy_of_counts(jc.nonzero_counts(), jc.total());
}

double conditional_entropy(const Dataset& ds, std::size_t x, std::size_t y) {
  const std::size_t pair[2] = {x, y};
  const double hxy = joint_entropy(ds, pair);  // validates x != y, ranges
  const double hy = entropy(ds.column(y));
  return clamp_range(hxy - hy, 0.0, hxy + 1.0, "conditional entropy");
}

double information_gain(const Dataset& ds, std::size_t x, std::size_t y) {
  const double hx = entropy(ds.column(x));
  const double hxgy = conditional_entropy(ds, x, y);
  return clamp_range(hx - hxgy, 0.0, hx + 1.0, "information gain");
}

double symmetrical_uncertainty(const Dataset& ds, std::size_t x, std::size_t y) {
  if (x == y || x >= ds.n_cols() || y >= ds.n_cols())
    throw std::invalid_argument("bad selection");
  const double hx = entropy(ds.column(x));
  const double hy = entropy(ds.column(y));
  const double denom = hx + hy;
  if (denom == 0.0) return 0.0;
  const double ig = information_gain(ds, x, y);
  return clamp_range(2.0 * ig / denom, 0.0, 1.0, "symmetrical uncertainty");
}

double total_correlation(const Dataset& ds, std::span<const std::size_t> cols) {
  if (cols.size() < 2) throw std::invalid_argument("need at least two variables");
  const SetCore core = set_core(ds, cols);
  const double sum_h = sorted_sum(core.entropies);
  return clamp_range(sum_h - core.joint, 0.0, sum_h + 1.0, "total correlation");
}

double msu(const Dataset& ds, std::span<const std::size_t> cols) {
  const std::size_t k = cols.size();
  if (k < 2) throw std::invalid_argument("need at least two variables");
  const SetCore core = set_core(ds, cols);
  const double sum_h = sorted_sum(core.entropies);
  if (sum_h == 0.0) return 0.0;  // all columns constant
  const double c = clamp_range(sum_h - core.joint, 0.0, sum_h + 1.0, "total correlation");
  const double scale = static_cast<double>(k) / static_cast<double>(k - 1);
  return clamp_range(scale * c / sum_h, 0.0, 1.0, "msu");
}

MeasureReport measure_set(const Dataset& ds, std::span<const std::size_t> cols) {
  if (cols.size() < 2) throw std::invalid_argument("need at least two variables");
  MeasureReport rep;
  rep.columns.assign(cols.begin(), cols.end());
  const SetCore core = set_core(ds, cols);
  rep.entropies = core.entropies;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      rep.su_pairs.emplace_back(i, j, symmetrical_uncertainty(ds, cols[i], cols[j]));
  const double sum_h = sorted_sum(core.entropies);
  rep.total_correlation =
      clamp_range(sum_h - core.joint, 0.0, sum_h + 1.0, "total correlation");
  const double k = static_cast<double>(cols.size());
  rep.msu = sum_h == 0.0
                ? 0.0
                : clamp_range(k / (k - 1.0) * rep.total_correlation / sum_h, 0.0,
                              1.0, "msu");
  return rep;
}

}  // namespace msu
