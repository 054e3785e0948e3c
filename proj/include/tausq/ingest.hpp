#pragma once

// Reading and writing quantitative sequence databases in the SPMF-style
// text format, utility tables, and a deterministic synthetic generator.
//
// Database line grammar:
//   item[qty] item[qty] -1 item[qty] ... -2 [SUtility:<int>]
// A trailing "-1" before "-2" is accepted. Blank lines are skipped.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tausq/core_model.hpp"

namespace tausq {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One sequence as read from text, in original item labels.
struct RawSequence {
  std::size_t line = 0;
  std::vector<std::vector<std::pair<std::uint64_t, Quantity>>> itemsets;
};

/// Profits keyed by original label, already scaled to integers.
struct RawUtilityTable {
  std::map<std::uint64_t, Utility> profit;
  std::int64_t scale = 1;
};

std::vector<RawSequence> parse_database(std::istream& in);
RawUtilityTable parse_utility_table(std::istream& in);

/// Remaps labels to dense ids (ascending label order) and attaches the
/// utility table. Throws std::invalid_argument when an item lacks a profit.
QDatabase bind(const std::vector<RawSequence>& raw, const RawUtilityTable& table);

QDatabase load_database(const std::string& db_path, const std::string& utils_path);

/// Canonical text: ascending items, single spaces, "-1" between itemsets,
/// "-2" terminator, no SUtility token, LF newlines. Original labels.
std::string write_database(const QDatabase& db);
std::string write_utility_table(const QDatabase& db);

/// Target query syntax: itemsets of original labels separated by "-1",
/// e.g. "2 4 -1 5". Items within an itemset may appear in any order.
std::vector<std::vector<std::uint64_t>> parse_target_labels(const std::string& text);
/// Maps a label-level target onto dense ids. Labels absent from the
/// database yield std::nullopt (no sequence can contain the target).
std::optional<Pattern> map_target(const QDatabase& db, const std::vector<std::vector<std::uint64_t>>& labels);
std::string format_pattern(const QDatabase& db, const Pattern& p);

struct GeneratorSpec {
  std::uint64_t seed = 1;
  std::size_t num_sequences = 100;
  std::size_t num_items = 10;
  std::size_t avg_seq_size = 3;   // itemsets per sequence, drawn from [1, 2*avg-1]
  std::size_t avg_set_size = 2;   // items per itemset, drawn from [1, 2*avg-1]
  Quantity quantity_max = 5;
  Utility eu_max = 10;
  /// Planted target in dense ids (labels are id+1).
  std::optional<Pattern> planted;
  double plant_probability = 0.0;
};

class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic in `spec.seed`, independent of the standard library's
/// distribution implementations. Item labels are 1..num_items.
QDatabase generate(const GeneratorSpec& spec);

}  // namespace tausq
