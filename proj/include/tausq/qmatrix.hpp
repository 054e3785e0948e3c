#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tausq/core_model.hpp"

namespace tausq {

/// Sparse q-matrix of one q-sequence: for every q-item its utility and the
/// utility of everything strictly after it (remaining utility). Cells are
/// stored in sequence order, so the remaining sequence of a cell is the
/// suffix of `cells` after it.
struct QMatrix {
  struct Cell {
    ItemId item;
    std::uint32_t col;  // 1-based itemset index
    Utility utility;
    Utility ru;
  };

  std::vector<Cell> cells;
  std::vector<std::uint32_t> col_begin;  // col c occupies [col_begin[c-1], col_begin[c])
  Utility total = 0;

  std::size_t columns() const { return col_begin.empty() ? 0 : col_begin.size() - 1; }
  std::uint32_t col_start(std::size_t c) const { return col_begin[c - 1]; }
  std::uint32_t col_end(std::size_t c) const { return col_begin[c]; }

  /// Flat index of (item, column), if present.
  std::optional<std::uint32_t> find(ItemId item, std::size_t col) const;
  std::optional<Utility> utility(ItemId item, std::size_t col) const;
  std::optional<Utility> ru(ItemId item, std::size_t col) const;
};

QMatrix build_qmatrix(const QSequence& qs, const UtilityTable& ut);

}  // namespace tausq
