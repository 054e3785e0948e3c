#pragma once

// Targeted chain: the projected database of one search node. A head row per
// sequence that contains the node's pattern, each with the list of
// extension positions (eid) and the best instance utility ending there.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tausq/bounds.hpp"
#include "tausq/qmatrix.hpp"
#include "tausq/target.hpp"

namespace tausq {

struct TargetedListEntry {
  std::uint32_t eid = 0;   // 1-based itemset index of the extension item
  std::uint32_t cell = 0;  // flat q-matrix index of the extension item
  Utility util = 0;        // max instance utility ending at this extension item
  Utility rrs_util = 0;
  std::uint32_t rrs_count = 0;
  Utility merged_util = 0;  // rrs plus missing qSuf items, for vSRAU
  bool feasible = true;     // query suffix still placeable after this entry
};

struct HeadRow {
  std::uint32_t seq = 0;         // index into SearchSpace::seqs
  std::uint32_t parent_row = 0;  // index of the originating row in the parent node
  Rational srau{0};              // max over entries of the position bound
  std::vector<TargetedListEntry> entries;
};

/// Exact sum of rationals with a shared running denominator.
struct RationalSum {
  __int128 num = 0;
  __int128 den = 1;
  void add(const Rational& r);
};

struct ProjectedDB {
  Pattern pattern;
  MatchFlags flags;
  std::size_t qsuf_len = 0;
  std::vector<ItemId> qsuf_items;  // sorted, one per qSuf slot
  std::vector<HeadRow> rows;
  /// D_T rows with at least one feasible entry (the n of the rrs cutoff).
  std::size_t contributing = 0;
  /// Sum over D_T rows of the max entry utility.
  Utility utility = 0;
  RationalSum srau_db;
};

/// Everything a search needs that does not change between nodes.
struct SearchSpace {
  std::vector<const QSequence*> seqs;
  std::vector<QMatrix> matrices;
  std::vector<char> in_dt;
  std::vector<LIRow> li;  // empty row when the sequence is outside D_T
  std::vector<Utility> seq_utility;
  std::optional<TargetQuery> target;
  /// false: target conditioning off (post-filter mode).
  bool targeted = true;
  Threshold threshold;
  BoundConfig bound;
  std::size_t num_items = 0;
};

/// Builds matrices and LI rows for the given sequences. `in_dt[i]` says
/// whether sequence i contains the target.
SearchSpace make_search_space(std::vector<const QSequence*> seqs, std::vector<char> in_dt, const UtilityTable& ut,
                              std::size_t num_items, std::optional<TargetQuery> target, bool targeted,
                              Threshold th, BoundConfig bound);

/// The 1-sequence <{item}>; rows restricted to `rows` when given.
ProjectedDB initial_projection(const SearchSpace& sp, ItemId item, bool drop_infeasible,
                               std::optional<std::span<const std::uint32_t>> rows = std::nullopt);

/// I- or S-extension of `parent` by `item`. `rows` restricts the parent rows
/// that are scanned (rows that cannot host the item may be skipped).
ProjectedDB extend_projection(const SearchSpace& sp, const ProjectedDB& parent, ItemId item, ExtType ext,
                              bool drop_infeasible,
                              std::optional<std::span<const std::uint32_t>> rows = std::nullopt);

/// Fills rrs fields, per-row SRAU and the database SRAU. Needs `contributing`.
void annotate_bounds(const SearchSpace& sp, ProjectedDB& pdb);

/// Quantities the width-pruning strategies look at, over contributing rows.
struct ChildSummary {
  Utility filtered_utility = 0;  // strategy 2: sum of u(QS)
  Utility best_util_ru = 0;      // strategies 3/4: sum of max (util + ru)
  Utility best_util = 0;         // the util part of those maxima
  RationalSum tdau;              // strategy 6: sum of parent row SRAU
};
ChildSummary summarize_child(const SearchSpace& sp, const ProjectedDB& parent, const ProjectedDB& child);

}  // namespace tausq
