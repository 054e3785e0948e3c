#pragma once

// Small random instances for differential testing against the oracle, the
// strategy toggle grid, and a reproducer shrinker.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tausq/core_model.hpp"

namespace tausq {

struct SuiteInstance {
  std::uint64_t seed = 0;
  QDatabase db;
  Pattern target;  // planted, dense ids
};

/// 10-25 sequences over at most 10 items, at most 5 itemsets of at most 3
/// items each, with a planted target of 1-3 items.
SuiteInstance random_instance(std::uint64_t seed);

struct ToggleCombo {
  std::string name;
  std::array<bool, 6> strategies;
};
/// all-on, each single strategy off, all-off.
std::vector<ToggleCombo> toggle_combos();

/// Removes sequences, then trailing itemsets and items, while `still_fails`
/// keeps returning true. Returns a locally minimal database.
QDatabase shrink_database(const QDatabase& db, const std::function<bool(const QDatabase&)>& still_fails);

}  // namespace tausq
