#include "tausq/bounds.hpp"

#include <algorithm>

namespace tausq {

Rational Threshold::item_cutoff(std::size_t rows) const {
  // xi * u_dt / rows
  const __int128 num = static_cast<__int128>(xi_.num()) * u_dt_;
  const __int128 den = static_cast<__int128>(xi_.den()) * static_cast<__int128>(rows == 0 ? 1 : rows);
  return Rational(checked_narrow(num), checked_narrow(den));
}

Utility remaining_utility(const QMatrix& qm, ItemId ext_item, std::size_t ext_pos) {
  auto r = qm.ru(ext_item, ext_pos);
  if (!r) throw LookupError("no q-item at the extension position");
  return *r;
}

namespace {

template <class Qualifies>
RrsInfo scan(const QMatrix& qm, std::uint32_t cell, Qualifies&& qualifies, std::span<const ItemId> qsuf) {
  RrsInfo r;
  // best non-rrs remaining occurrence per qSuf item (indexed by first slot)
  std::vector<Utility> best(qsuf.size(), 0);
  for (std::size_t k = cell + 1; k < qm.cells.size(); ++k) {
    const auto& c = qm.cells[k];
    if (qualifies(c.utility)) {
      r.utility += c.utility;
      ++r.count;
      continue;
    }
    auto it = std::lower_bound(qsuf.begin(), qsuf.end(), c.item);
    if (it != qsuf.end() && *it == c.item) {
      auto& b = best[static_cast<std::size_t>(it - qsuf.begin())];
      b = std::max(b, c.utility);
    }
  }
  // every qSuf slot that lands outside the rrs is covered by its item's best
  // non-rrs occurrence
  r.merged_qsuf_utility = r.utility;
  for (std::size_t i = 0; i < qsuf.size(); ++i) {
    const auto first = static_cast<std::size_t>(std::lower_bound(qsuf.begin(), qsuf.end(), qsuf[i]) - qsuf.begin());
    r.merged_qsuf_utility += best[first];
  }
  return r;
}

}  // namespace

std::vector<ItemId> sorted_items(const Pattern& p) {
  std::vector<ItemId> v;
  for (const auto& x : p.itemsets()) v.insert(v.end(), x.begin(), x.end());
  std::sort(v.begin(), v.end());
  return v;
}

RrsInfo rrs_info(const QMatrix& qm, ItemId ext_item, std::size_t ext_pos, const Rational& cutoff,
                 const Pattern& qsuf) {
  auto cell = qm.find(ext_item, ext_pos);
  if (!cell) throw LookupError("no q-item at the extension position");
  const auto items = sorted_items(qsuf);
  return scan(qm, *cell, [&](Utility u) { return Rational(u) >= cutoff; }, items);
}

RrsInfo rrs_info_at(const QMatrix& qm, std::uint32_t cell, const Threshold& th, std::size_t rows,
                    std::span<const ItemId> qsuf_items) {
  if (rows == 0) return scan(qm, cell, [](Utility) { return false; }, qsuf_items);
  return scan(qm, cell, [&](Utility u) { return th.item_qualifies(u, rows); }, qsuf_items);
}

Rational position_bound(Utility util, const RrsInfo& rrs, bool rs_empty, bool feasible, std::size_t pattern_len,
                        std::size_t qsuf_len, const BoundConfig& cfg) {
  if (rs_empty || !feasible) return Rational(0);
  const auto len = static_cast<std::int64_t>(pattern_len);
  const auto q = static_cast<std::int64_t>(qsuf_len);
  const auto r = static_cast<std::int64_t>(rrs.count);
  if (cfg.variant == BoundVariant::SRAU_TDAU) return Rational(util + rrs.utility, len);
  // Any descendant that contains the target adds at least q items, and its
  // qSuf slots are paid for by merged_qsuf_utility, so a denominator of
  // len + k is safe for every k <= q. The modes only choose k.
  const Utility n = util + rrs.merged_qsuf_utility;
  switch (cfg.length_mode) {
    case LengthMode::Both:
    case LengthMode::QsufOnly:
      return Rational(n, len + q);
    case LengthMode::RrsOnly:
      return Rational(n, len + std::min(r, q));
    case LengthMode::None:
      break;
  }
  return Rational(n, len);
}

bool strategy2_keep(Utility filtered_utility, std::size_t pattern_len, std::size_t qsuf_len, const Threshold& th) {
  return th.reached(filtered_utility, static_cast<__int128>(pattern_len + qsuf_len));
}

bool strategy34_keep(Utility u_prefix, Utility ru_suf, std::size_t pattern_len, std::size_t qsuf_len,
                     const Threshold& th) {
  return th.reached(static_cast<__int128>(u_prefix) + ru_suf, static_cast<__int128>(pattern_len + qsuf_len));
}

}  // namespace tausq
