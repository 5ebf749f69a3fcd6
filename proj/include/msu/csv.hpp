#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "msu/dataset.hpp"
#include "msu/harness.hpp"

// CSV exchange formats.
//
// Datasets: header row of column names, one row per sample. A column whose
// cells are all unsigned integers (fitting 32 bits) keeps its numeric values
// and gets declared cardinality max+1; any other column is label-encoded in
// order of first occurrence with declared cardinality = number of distinct
// strings. Files written here always re-read to the same measures.
//
// Curves: x,mean,stddev,trials,measure,config_fingerprint — one row per
// (measure, sweep point), sorted by measure label then x. Floats use six
// significant digits, the fingerprint is 16 hex digits; output is
// byte-stable across runs and thread counts.

namespace msu::csvio {

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `class_name` column, when present, becomes the designated class; pass an
// empty name to skip designation.
Dataset read_dataset(std::istream& in, std::string_view class_name = "class");
Dataset read_dataset_file(const std::string& path,
                          std::string_view class_name = "class");

std::string dataset_to_csv(const Dataset& ds);
void write_dataset_file(const std::string& path, const Dataset& ds);

std::string curves_to_csv(std::span<const harness::SweepResult> results);
void write_curves_file(const std::string& path,
                       std::span<const harness::SweepResult> results);

// n,mean_msu,delta rows of a stop-rule trace; delta is empty on the first row.
std::string stop_trace_to_csv(const harness::StopRuleResult& res);
void write_stop_trace_file(const std::string& path,
                           const harness::StopRuleResult& res);

std::string format_fixed6(double v);  // printf %.6f, for measure reports
std::string format_sig6(double v);    // printf %.6g, for curve values
std::string fingerprint_hex(std::uint64_t fp);

}  // namespace msu::csvio
