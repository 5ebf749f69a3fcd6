#include "msu/dataset.hpp"

#include <stdexcept>

namespace msu {

void LabelColumn::validate() const {
  if (values.empty()) throw std::invalid_argument("empty input");
  if (declared_cardinality == 0)
    throw std::invalid_argument("cardinality must be at least 1");
  for (Label v : values)
    if (v >= declared_cardinality)
      throw std::invalid_argument("label out of range");
}

void Dataset::add_column(std::string name, LabelColumn column) {
  if (name.empty()) throw std::invalid_argument("column name must not be empty");
  if (has_column(name)) throw std::invalid_argument("duplicate column name: " + name);
  column.validate();
  if (!columns_.empty() && column.size() != n_rows())
    throw std::invalid_argument("column length mismatch");
  names_.push_back(std::move(name));
  columns_.push_back(std::move(column));
}

const LabelColumn& Dataset::column(std::size_t i) const {
  if (i >= columns_.size()) throw std::invalid_argument("bad selection");
  return columns_[i];
}

const std::string& Dataset::name(std::size_t i) const {
  if (i >= names_.size()) throw std::invalid_argument("bad selection");
  return names_[i];
}

std::size_t Dataset::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw std::invalid_argument("unknown column: " + std::string(name));
}

bool Dataset::has_column(std::string_view name) const {
  for (const auto& n : names_)
    if (n == name) return true;
  return false;
}

void Dataset::set_class_index(std::size_t i) {
  if (i >= columns_.size()) throw std::invalid_argument("bad selection");
  class_index_ = i;
}

}  // namespace msu
