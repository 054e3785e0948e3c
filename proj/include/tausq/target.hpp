#pragma once

// Target-query machinery: database filtering, the LI-Table (latest feasible
// position of every target itemset), greedy match flags, and the query
// suffix feasibility test used by every pruning decision.

#include <cstdint>
#include <vector>

#include "tausq/core_model.hpp"

namespace tausq {

class TargetQuery {
 public:
  explicit TargetQuery(Pattern pattern);

  const Pattern& pattern() const { return pattern_; }
  /// Item count |T|.
  std::size_t length() const { return pattern_.length(); }
  /// Itemset count.
  std::size_t size() const { return pattern_.size(); }
  /// 1-based target itemset.
  const std::vector<ItemId>& itemset(std::size_t k) const { return pattern_.itemsets()[k - 1]; }
  /// Items in target itemsets 1..k.
  std::size_t prefix_length(std::size_t k) const { return prefix_len_[k]; }

 private:
  Pattern pattern_;
  std::vector<std::size_t> prefix_len_;
};

struct FilterResult {
  /// Indices into the input database of the sequences containing the target.
  std::vector<std::size_t> kept;
  Utility u_dt = 0;
  /// No pattern containing the target can reach the threshold:
  /// u(D_T) < |T| * xi * u(D_T), or D_T is empty.
  bool early_exit = false;
};

FilterResult filter_database(const QDatabase& db, const TargetQuery& t, const Rational& xi);

/// Per sequence: row[k-1] is the latest itemset index where target itemset k
/// can sit with itemsets k+1.. still placeable strictly after it.
using LIRow = std::vector<std::size_t>;

/// Throws std::invalid_argument when `qs` does not contain the target.
LIRow build_li_table(const QSequence& qs, const TargetQuery& t);

/// True iff target itemsets first.. all fit strictly after itemset `pos`.
/// `first` is 1-based; first > size(T) means nothing is left to place.
bool suffix_fits_after(const LIRow& li, std::size_t first, std::size_t pos);

enum class ExtType : std::uint8_t { I, S };

/// Greedy earliest matching of the target against the pattern's growth path.
struct MatchFlags {
  std::uint32_t imatch = 0;   // fully matched target itemsets
  std::uint32_t iimatch = 0;  // matched items of target itemset imatch+1 in the current pattern itemset
  bool frozen = false;        // whole target matched
  bool locked = false;        // current pattern itemset already completed a target itemset

  friend bool operator==(const MatchFlags&, const MatchFlags&) = default;
};

MatchFlags update_flags(MatchFlags f, const TargetQuery& t, ItemId appended, ExtType ext);
/// Flags for the pattern built by S-extending the empty pattern along `p`.
MatchFlags flags_for(const Pattern& p, const TargetQuery& t);

/// |qSuf|: target items not yet matched (partially matched items count as
/// matched).
std::size_t qsuf_length(const MatchFlags& f, const TargetQuery& t);
/// The unmatched remainder of the target as a pattern (remaining items of a
/// partially matched itemset form its first itemset).
Pattern qsuf_pattern(const MatchFlags& f, const TargetQuery& t);

/// Can the unmatched part of the target still be instantiated after an
/// extension item `ext_item` at itemset `ext_pos` of a sequence whose LI row
/// is `li`? `ext_itemset` is the q-itemset at `ext_pos`. Either the pending
/// target itemset completes inside `ext_itemset` (items greater than
/// `ext_item`) with the rest strictly later, or the whole remainder starts
/// strictly after `ext_pos`.
bool qsuf_feasible(const LIRow& li, std::size_t ext_pos, ItemId ext_item, const QItemset& ext_itemset,
                   const MatchFlags& f, const TargetQuery& t);

}  // namespace tausq
