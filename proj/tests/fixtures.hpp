#pragma once

#include <string>
#include <vector>

#include "tausq/core_model.hpp"
#include "tausq/ingest.hpp"

namespace fx {

// labels a..i are 1..9, dense ids 0..8
inline constexpr tausq::ItemId a = 0, b = 1, c = 2, d = 3, e = 4, f = 5, g = 6, h = 7, i = 8;

inline std::string path(const std::string& name) { return std::string(TAUSQ_FIXTURE_DIR) + "/" + name; }

inline const tausq::QDatabase& running_example() {
  static const tausq::QDatabase db = tausq::load_database(path("table1.txt"), path("table2.txt"));
  return db;
}

inline tausq::Pattern P(std::vector<std::vector<tausq::ItemId>> v) { return tausq::Pattern(std::move(v)); }

}  // namespace fx
