#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msu {

using Label = std::uint32_t;
using Count = std::uint64_t;

// One discrete attribute, integer-encoded: every value lies in
// [0, declared_cardinality). The declared cardinality is the size of the
// value domain, which may exceed the number of distinct values present.
struct LabelColumn {
  std::vector<Label> values;
  Label declared_cardinality = 1;

  std::size_t size() const { return values.size(); }
  void validate() const;  // throws std::invalid_argument on violation
};

// Equal-length named columns, optionally one designated as the class.
class Dataset {
 public:
  // Rejects duplicate names, zero cardinality, and length mismatches.
  void add_column(std::string name, LabelColumn column);

  std::size_t n_rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
  std::size_t n_cols() const { return columns_.size(); }

  const LabelColumn& column(std::size_t i) const;
  const std::string& name(std::size_t i) const;
  std::size_t index_of(std::string_view name) const;  // throws on unknown name
  bool has_column(std::string_view name) const;

  void set_class_index(std::size_t i);
  std::optional<std::size_t> class_index() const { return class_index_; }

 private:
  std::vector<std::string> names_;
  std::vector<LabelColumn> columns_;
  std::optional<std::size_t> class_index_;
};

}  // namespace msu
