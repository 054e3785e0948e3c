#pragma once

// Pattern-growth search for targeted high average utility sequential
// patterns, with per-strategy toggles and run statistics.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tausq/bounds.hpp"
#include "tausq/core_model.hpp"
#include "tausq/target.hpp"

namespace tausq {

enum class MiningMode : std::uint8_t { Targeted, PostFilter };

struct MiningConfig {
  Rational xi{1, 10};
  Pattern target;
  BoundConfig bound;
  /// strategies[k] toggles strategy k+1:
  ///   1 filtering / early exit, 2 filtered-utility pruning,
  ///   3 S-extension and 4 I-extension remaining-utility pruning,
  ///   5 SRAU depth pruning, 6 TDAU width pruning.
  std::array<bool, 6> strategies{true, true, true, true, true, true};
  MiningMode mode = MiningMode::Targeted;
  std::optional<std::size_t> max_pattern_length;
  /// Recompute containment and au from scratch at every emission.
  bool self_audit = false;
};

struct MinedPattern {
  Pattern pattern;
  Utility utility = 0;  // sum over D_T of the per-sequence max instance utility
  Rational au;          // utility / |pattern|, unreduced

  friend bool operator==(const MinedPattern&, const MinedPattern&) = default;
};

struct MiningStats {
  std::uint64_t candidates = 0;
  /// pruned[k] counts prunes by strategy k+1 (strategy 1: sequences filtered out).
  std::array<std::uint64_t, 6> pruned{};
  std::uint64_t peak_rows = 0;
  double wall_ms = 0;
  bool early_exit = false;
  Utility u_dt = 0;
  std::size_t dt_size = 0;
};

struct MiningResult {
  std::vector<MinedPattern> patterns;  // ascending by pattern
  MiningStats stats;
};

class AuditFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Mines in the configured mode.
MiningResult mine(const QDatabase& db, const MiningConfig& cfg);
/// The same engine with target conditioning off; results are filtered by
/// containment of the target at the end.
MiningResult post_filter_mine(const QDatabase& db, MiningConfig cfg);

}  // namespace tausq
