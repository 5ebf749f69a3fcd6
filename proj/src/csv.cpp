#include "msu/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

namespace msu::csvio {

namespace {

std::string row_msg(std::size_t row, const std::string& what) {
  return "row " + std::to_string(row) + ": " + what;
}

// One logical CSV line into fields; supports double-quoted fields with ""
// escapes. `row` is 1-based for error messages.
std::vector<std::string> split_line(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  bool field_was_quoted = false;
  while (i <= line.size()) {
    if (i == line.size()) {
      if (quoted) throw CsvError(row_msg(row, "unterminated quote"));
      fields.push_back(cur);
      break;
    }
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
      field_was_quoted = false;
    } else {
      cur += c;
    }
    ++i;
  }
  return fields;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool parse_uint32(const std::string& s, Label& out) {
  if (s.empty() || s.size() > 10) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  // Keep max+1 (the declared cardinality) representable too.
  if (v > 0xFFFFFFFEULL) return false;
  out = static_cast<Label>(v);
  return true;
}

}  // namespace

Dataset read_dataset(std::istream& in, std::string_view class_name) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw CsvError("empty input");

  const std::vector<std::string> names = split_line(lines[0], 1);
  const std::size_t k = names.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (names[i].empty()) throw CsvError(row_msg(1, "empty column name"));
    for (std::size_t j = i + 1; j < k; ++j)
      if (names[i] == names[j])
        throw CsvError(row_msg(1, "duplicate column name: " + names[i]));
  }

  const std::size_t n_rows = lines.size() - 1;
  if (n_rows == 0) throw CsvError("no data rows");

  std::vector<std::vector<std::string>> cells(k);
  for (auto& col : cells) col.reserve(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::vector<std::string> fields = split_line(lines[r + 1], r + 2);
    if (fields.size() != k)
      throw CsvError(row_msg(r + 2, "expected " + std::to_string(k) +
                                        " fields, got " +
                                        std::to_string(fields.size())));
    for (std::size_t c = 0; c < k; ++c) cells[c].push_back(std::move(fields[c]));
  }

  Dataset ds;
  for (std::size_t c = 0; c < k; ++c) {
    LabelColumn col;
    col.values.reserve(n_rows);
    bool integral = true;
    Label max_v = 0;
    for (const std::string& s : cells[c]) {
      Label v;
      if (!parse_uint32(s, v)) {
        integral = false;
        break;
      }
      col.values.push_back(v);
      max_v = std::max(max_v, v);
    }
    if (integral) {
      col.declared_cardinality = max_v + 1;
    } else {
      col.values.clear();
      std::map<std::string, Label> codes;
      for (const std::string& s : cells[c]) {
        auto [it, fresh] = codes.try_emplace(s, static_cast<Label>(codes.size()));
        (void)fresh;
        col.values.push_back(it->second);
      }
      col.declared_cardinality = static_cast<Label>(codes.size());
    }
    ds.add_column(names[c], std::move(col));
  }
  if (!class_name.empty() && ds.has_column(class_name))
    ds.set_class_index(ds.index_of(class_name));
  return ds;
}

Dataset read_dataset_file(const std::string& path, std::string_view class_name) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open file: " + path);
  return read_dataset(in, class_name);
}

std::string dataset_to_csv(const Dataset& ds) {
  std::string out;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (c) out += ',';
    out += quote_if_needed(ds.name(c));
  }
  out += '\n';
  char buf[16];
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof(buf), "%u", ds.column(c).values[r]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot write file: " + path);
  out << text;
  out.flush();
  if (!out) throw CsvError("cannot write file: " + path);
}

}  // namespace

void write_dataset_file(const std::string& path, const Dataset& ds) {
  write_text_file(path, dataset_to_csv(ds));
}

std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

std::string curves_to_csv(std::span<const harness::SweepResult> results) {
  // (measure label, x, formatted row) triples, sorted for a stable layout.
  std::vector<std::tuple<std::string, Count, std::string>> rows;
  char buf[64];
  for (const harness::SweepResult& res : results) {
    for (const harness::CurvePoint& pt : res.points) {
      std::string row;
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(pt.x));
      row += buf;
      row += ',';
      row += format_sig6(pt.mean);
      row += ',';
      row += format_sig6(pt.stddev);
      row += ',';
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(pt.trials));
      row += buf;
      row += ',';
      row += res.measure;
      row += ',';
      row += fingerprint_hex(res.fingerprint);
      rows.emplace_back(res.measure, pt.x, std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     if (std::get<0>(a) != std::get<0>(b))
                       return std::get<0>(a) < std::get<0>(b);
                     return std::get<1>(a) < std::get<1>(b);
                   });
  std::string out = "x,mean,stddev,trials,measure,config_fingerprint\n";
  for (const auto& r : rows) {
    out += std::get<2>(r);
    out += '\n';
  }
  return out;
}

void write_curves_file(const std::string& path,
                       std::span<const harness::SweepResult> results) {
  write_text_file(path, curves_to_csv(results));
}

std::string stop_trace_to_csv(const harness::StopRuleResult& res) {
  std::string out = "n,mean_msu,delta\n";
  char buf[64];
  for (const harness::StopTraceRow& row : res.trace) {
    std::snprintf(buf, sizeof(buf), "%llu",
                  static_cast<unsigned long long>(row.n));
    out += buf;
    out += ',';
    out += format_sig6(row.mean);
    out += ',';
    if (row.delta) out += format_sig6(*row.delta);
    out += '\n';
  }
  return out;
}

void write_stop_trace_file(const std::string& path,
                           const harness::StopRuleResult& res) {
  write_text_file(path, stop_trace_to_csv(res));
}

}  // namespace msu::csvio
