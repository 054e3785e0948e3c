#pragma once

// Quantitative sequence data model: q-items, q-itemsets, q-sequences, the
// external utility table, patterns, and the exact utility / containment /
// instance computations everything else is built on.
//
// Itemset indices ("positions", "eids") are 1-based throughout the public
// API, matching how positions are written for q-sequences.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tausq/rational.hpp"

namespace tausq {

using ItemId = std::uint32_t;
using Utility = std::int64_t;
using Quantity = std::int64_t;

struct QItem {
  ItemId item = 0;
  Quantity quantity = 1;

  friend bool operator==(const QItem&, const QItem&) = default;
};

/// Items strictly ascending by ItemId.
struct QItemset {
  std::vector<QItem> items;

  std::size_t size() const { return items.size(); }
  const QItem* find(ItemId item) const;
  bool contains(ItemId item) const { return find(item) != nullptr; }

  friend bool operator==(const QItemset&, const QItemset&) = default;
};

struct QSequence {
  std::uint64_t sid = 0;
  std::vector<QItemset> itemsets;

  /// Number of itemsets.
  std::size_t size() const { return itemsets.size(); }
  /// Number of q-items.
  std::size_t length() const;
  /// 1-based itemset access.
  const QItemset& at(std::size_t j) const;

  friend bool operator==(const QSequence&, const QSequence&) = default;
};

/// External utilities indexed by dense ItemId. Profits that were given as
/// decimals are stored multiplied by `scale()` (a power of ten); every
/// utility computed from the table is in those scaled units and only report
/// writers divide the scale back out.
class UtilityTable {
 public:
  UtilityTable() = default;
  explicit UtilityTable(std::vector<Utility> eu, std::int64_t scale = 1);

  Utility eu(ItemId item) const;
  bool covers(ItemId item) const { return item < eu_.size(); }
  std::size_t size() const { return eu_.size(); }
  std::int64_t scale() const { return scale_; }
  const std::vector<Utility>& values() const { return eu_; }

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

 private:
  std::vector<Utility> eu_;
  std::int64_t scale_ = 1;
};

struct QDatabase {
  std::vector<QSequence> sequences;
  UtilityTable utable;
  /// Dense ItemId -> original item label. Ascending, so ItemId order equals
  /// label order.
  std::vector<std::uint64_t> labels;

  std::size_t num_items() const { return labels.size(); }
  std::optional<ItemId> id_of(std::uint64_t label) const;

  /// Checks sid uniqueness, itemset ordering, quantities and utility
  /// coverage. Throws std::invalid_argument describing the first violation.
  void validate() const;
};

/// Ordered list of itemsets over ItemId; each itemset strictly ascending and
/// nonempty.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<std::vector<ItemId>> itemsets);

  const std::vector<std::vector<ItemId>>& itemsets() const { return itemsets_; }
  /// Number of items.
  std::size_t length() const { return length_; }
  /// Number of itemsets.
  std::size_t size() const { return itemsets_.size(); }
  bool empty() const { return itemsets_.empty(); }
  ItemId last_item() const { return itemsets_.back().back(); }

  /// I-extension: append `item` to the last itemset (item must exceed the
  /// current last item).
  Pattern i_extend(ItemId item) const;
  /// S-extension: append `{item}` as a new itemset.
  Pattern s_extend(ItemId item) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern& a, const Pattern& b) { return a.itemsets_ <=> b.itemsets_; }

 private:
  std::vector<std::vector<ItemId>> itemsets_;
  std::size_t length_ = 0;
};

/// Strictly increasing 1-based itemset indices, one per pattern itemset.
using InstancePosition = std::vector<std::size_t>;

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

Utility item_utility(ItemId item, std::size_t j, const QSequence& qs, const UtilityTable& ut);
Utility itemset_utility(std::size_t j, const QSequence& qs, const UtilityTable& ut);
Rational itemset_avg_utility(std::size_t j, const QSequence& qs, const UtilityTable& ut);
Utility sequence_utility(const QSequence& qs, const UtilityTable& ut);
Rational sequence_avg_utility(const QSequence& qs, const UtilityTable& ut);
Utility database_utility(std::span<const QSequence> seqs, const UtilityTable& ut);

bool contains(const Pattern& pat, const QSequence& qs);
/// Pattern-in-pattern containment (`sub` is a subsequence of `super`).
bool contains(const Pattern& sub, const Pattern& super);

std::vector<InstancePosition> instances(const Pattern& pat, const QSequence& qs);
Utility instance_utility(const Pattern& pat, const InstancePosition& p, const QSequence& qs,
                         const UtilityTable& ut);

/// max over instances; throws LookupError when `pat` does not occur.
Utility pattern_utility_in_seq(const Pattern& pat, const QSequence& qs, const UtilityTable& ut);
/// Sum over containing sequences of the per-sequence utility.
Utility pattern_utility(const Pattern& pat, std::span<const QSequence> db_t, const UtilityTable& ut);
/// pattern_utility / |pat|; 0 when the pattern occurs nowhere.
Rational pattern_avg_utility(const Pattern& pat, std::span<const QSequence> db_t,
                             const UtilityTable& ut);

}  // namespace tausq
