#pragma once

// Brute-force reference miner. Shares only the core data types with the
// search engine: containment, instance enumeration and the pattern space are
// all recomputed here from the definitions.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tausq/core_model.hpp"
#include "tausq/miner.hpp"

namespace tausq {

struct OracleConfig {
  std::size_t max_pattern_length = 8;
  Rational xi{1, 10};
  Pattern target;
  /// Maximum number of patterns examined before giving up.
  std::uint64_t budget = 5'000'000;
};

class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OraclePattern {
  Pattern pattern;
  Utility utility = 0;
  Rational au;
};

/// Every pattern up to the length cap that contains the target and occurs in
/// D_T, with its exact utility. Independent of xi.
struct OracleUniverse {
  Utility u_dt = 0;
  std::vector<OraclePattern> patterns;  // ascending by pattern
};
OracleUniverse oracle_enumerate(const QDatabase& db, const Pattern& target, std::size_t max_pattern_length,
                                std::uint64_t budget);
/// Patterns of the universe with au >= xi * u_dt.
std::vector<OraclePattern> oracle_select(const OracleUniverse& u, const Rational& xi);
std::vector<OraclePattern> oracle_mine(const QDatabase& db, const OracleConfig& cfg);

enum class DiscrepancyKind : std::uint8_t { Missing, Spurious, ValueMismatch };

struct Discrepancy {
  Pattern pattern;
  std::optional<Rational> miner_au;
  std::optional<Rational> oracle_au;
  DiscrepancyKind kind;
};

std::string to_string(DiscrepancyKind k);

/// Empty iff both lists hold the same (pattern, au) pairs. au values are
/// compared as numbers, so 135/3 equals 45/1.
std::vector<Discrepancy> compare(const std::vector<MinedPattern>& miner, const std::vector<OraclePattern>& oracle);

}  // namespace tausq
