#pragma once

// Remaining utility, remaining rising sequence (rrs), the SRAU / TDAU upper
// bounds with their vSRAU / vTDAU variants, and the strategy 2-4 checks.

#include <cstdint>
#include <span>
#include <vector>

#include "tausq/qmatrix.hpp"
#include "tausq/rational.hpp"
#include "tausq/target.hpp"

namespace tausq {

/// The acceptance threshold xi * u(D_T), compared exactly.
class Threshold {
 public:
  Threshold() = default;
  Threshold(Rational xi, Utility u_dt) : xi_(xi), u_dt_(u_dt) {}

  const Rational& xi() const { return xi_; }
  Utility u_dt() const { return u_dt_; }
  Rational value() const { return Rational(xi_.num(), xi_.den()) * Rational(u_dt_); }

  /// num / den >= xi * u_dt
  bool reached(__int128 num, __int128 den) const {
    return num * xi_.den() >= static_cast<__int128>(xi_.num()) * u_dt_ * den;
  }
  bool reached(const Rational& r) const { return reached(r.num(), r.den()); }
  /// The rrs cutoff for a node with `rows` contributing sequences:
  /// u >= xi * u_dt / rows.
  bool item_qualifies(Utility u, std::size_t rows) const {
    return static_cast<__int128>(u) * static_cast<__int128>(rows) * xi_.den() >=
           static_cast<__int128>(xi_.num()) * u_dt_;
  }
  Rational item_cutoff(std::size_t rows) const;

 private:
  Rational xi_{0};
  Utility u_dt_ = 0;
};

enum class BoundVariant : std::uint8_t { SRAU_TDAU, vSRAU_vTDAU };
/// Which length terms enlarge the vSRAU denominator.
enum class LengthMode : std::uint8_t { Both, RrsOnly, QsufOnly, None };

struct BoundConfig {
  BoundVariant variant = BoundVariant::SRAU_TDAU;
  LengthMode length_mode = LengthMode::Both;
};

struct RrsInfo {
  Utility utility = 0;
  std::size_t count = 0;
  Utility merged_qsuf_utility = 0;

  friend bool operator==(const RrsInfo&, const RrsInfo&) = default;
};

/// ru after the q-item (item, pos); throws LookupError when the cell is absent.
Utility remaining_utility(const QMatrix& qm, ItemId ext_item, std::size_t ext_pos);

/// Scans the remaining sequence after (ext_item, ext_pos). Items with
/// utility >= cutoff form the rrs. merged_qsuf_utility adds to the rrs
/// utility, for every qSuf item slot, the best remaining occurrence of that
/// item outside the rrs.
RrsInfo rrs_info(const QMatrix& qm, ItemId ext_item, std::size_t ext_pos, const Rational& cutoff,
                 const Pattern& qsuf);
/// Same scan starting after flat cell index `cell`, with the cutoff
/// threshold / rows. `qsuf_items` is sorted, one entry per qSuf slot.
RrsInfo rrs_info_at(const QMatrix& qm, std::uint32_t cell, const Threshold& th, std::size_t rows,
                    std::span<const ItemId> qsuf_items);
/// All items of a pattern, sorted, repeats kept.
std::vector<ItemId> sorted_items(const Pattern& p);

/// Per-position bound value. Returns 0 when the remaining sequence is empty
/// or the query suffix is infeasible.
///   SRAU:  (util + rrs.utility) / |S|
///   vSRAU: (util + rrs.merged_qsuf_utility) / (|S| + L), L by length mode:
///          Both, QsufOnly: |qSuf|
///          RrsOnly: min(rrs.count, |qSuf|)
///          None: 0
///          L never exceeds |qSuf|; a longer rrs term would not bound
///          descendants that skip the rrs items.
Rational position_bound(Utility util, const RrsInfo& rrs, bool rs_empty, bool feasible, std::size_t pattern_len,
                        std::size_t qsuf_len, const BoundConfig& cfg);

/// Strategy 2: keep iff the summed utility of the sequences that can still
/// host the query suffix reaches threshold * (|S'| + |qSuf|).
bool strategy2_keep(Utility filtered_utility, std::size_t pattern_len, std::size_t qsuf_len, const Threshold& th);
/// Strategies 3/4: keep iff u_prefix + ru_suf >= threshold * (|S'| + |qSuf|).
bool strategy34_keep(Utility u_prefix, Utility ru_suf, std::size_t pattern_len, std::size_t qsuf_len,
                     const Threshold& th);

}  // namespace tausq
