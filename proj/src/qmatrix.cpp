#include "tausq/qmatrix.hpp"

#include <algorithm>

namespace tausq {

std::optional<std::uint32_t> QMatrix::find(ItemId item, std::size_t col) const {
  if (col == 0 || col > columns()) return std::nullopt;
  auto b = cells.begin() + col_start(col);
  auto e = cells.begin() + col_end(col);
  auto it = std::lower_bound(b, e, item, [](const Cell& c, ItemId id) { return c.item < id; });
  if (it == e || it->item != item) return std::nullopt;
  return static_cast<std::uint32_t>(it - cells.begin());
}

std::optional<Utility> QMatrix::utility(ItemId item, std::size_t col) const {
  auto f = find(item, col);
  if (!f) return std::nullopt;
  return cells[*f].utility;
}

std::optional<Utility> QMatrix::ru(ItemId item, std::size_t col) const {
  auto f = find(item, col);
  if (!f) return std::nullopt;
  return cells[*f].ru;
}

QMatrix build_qmatrix(const QSequence& qs, const UtilityTable& ut) {
  QMatrix m;
  m.col_begin.reserve(qs.size() + 1);
  m.col_begin.push_back(0);
  std::uint32_t col = 0;
  for (const auto& y : qs.itemsets) {
    ++col;
    for (const auto& q : y.items) {
      Utility u = q.quantity * ut.eu(q.item);
      m.cells.push_back({q.item, col, u, 0});
      m.total += u;
    }
    m.col_begin.push_back(static_cast<std::uint32_t>(m.cells.size()));
  }
  Utility after = 0;
  for (auto it = m.cells.rbegin(); it != m.cells.rend(); ++it) {
    it->ru = after;
    after += it->utility;
  }
  return m;
}

}  // namespace tausq
