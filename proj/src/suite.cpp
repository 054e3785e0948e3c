#include "tausq/suite.hpp"

#include <algorithm>

#include "tausq/ingest.hpp"
#include "tausq/rng.hpp"

namespace tausq {

SuiteInstance random_instance(std::uint64_t seed) {
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  GeneratorSpec spec;
  spec.seed = seed;
  spec.num_sequences = static_cast<std::size_t>(rng.range(10, 25));
  spec.num_items = static_cast<std::size_t>(rng.range(4, 10));
  spec.avg_seq_size = 3;
  spec.avg_set_size = 2;
  spec.quantity_max = 5;
  spec.eu_max = 10;

  const auto tlen = static_cast<std::size_t>(rng.range(1, 3));
  std::vector<ItemId> pool(spec.num_items);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<ItemId>(i);
  for (std::size_t i = 0; i < tlen; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  // split the drawn items into itemsets; items may repeat across itemsets
  std::vector<std::vector<ItemId>> sets;
  std::vector<ItemId> cur;
  for (std::size_t i = 0; i < tlen; ++i) {
    if (!cur.empty() && rng.below(2) == 0) {
      std::sort(cur.begin(), cur.end());
      sets.push_back(cur);
      cur.clear();
    }
    ItemId it = pool[i];
    if (i > 0 && cur.empty() && rng.below(4) == 0) it = pool[0];
    cur.push_back(it);
  }
  std::sort(cur.begin(), cur.end());
  sets.push_back(cur);
  spec.planted = Pattern(sets);
  spec.plant_probability = 0.3 + 0.1 * static_cast<double>(rng.below(6));

  SuiteInstance inst;
  inst.seed = seed;
  inst.db = generate(spec);
  inst.target = *spec.planted;
  return inst;
}

std::vector<ToggleCombo> toggle_combos() {
  std::vector<ToggleCombo> v;
  v.push_back({"all-on", {true, true, true, true, true, true}});
  for (int k = 0; k < 6; ++k) {
    ToggleCombo c{"s" + std::to_string(k + 1) + "-off", {true, true, true, true, true, true}};
    c.strategies[k] = false;
    v.push_back(c);
  }
  v.push_back({"all-off", {false, false, false, false, false, false}});
  return v;
}

QDatabase shrink_database(const QDatabase& db, const std::function<bool(const QDatabase&)>& still_fails) {
  QDatabase cur = db;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < cur.sequences.size() && cur.sequences.size() > 1;) {
      QDatabase trial = cur;
      trial.sequences.erase(trial.sequences.begin() + static_cast<std::ptrdiff_t>(i));
      if (still_fails(trial)) {
        cur = std::move(trial);
        progress = true;
      } else {
        ++i;
      }
    }
    for (std::size_t s = 0; s < cur.sequences.size(); ++s) {
      for (std::size_t j = 0; j < cur.sequences[s].itemsets.size();) {
        auto& sets = cur.sequences[s].itemsets;
        bool removed = false;
        for (std::size_t k = 0; k < sets[j].items.size(); ++k) {
          QDatabase trial = cur;
          auto& y = trial.sequences[s].itemsets[j];
          y.items.erase(y.items.begin() + static_cast<std::ptrdiff_t>(k));
          if (y.items.empty()) trial.sequences[s].itemsets.erase(trial.sequences[s].itemsets.begin() + static_cast<std::ptrdiff_t>(j));
          if (trial.sequences[s].itemsets.empty()) continue;
          if (still_fails(trial)) {
            cur = std::move(trial);
            progress = removed = true;
            break;
          }
        }
        if (!removed) ++j;
      }
    }
  }
  return cur;
}

}  // namespace tausq
