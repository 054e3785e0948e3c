#include "tausq/core_model.hpp"

#include <algorithm>
#include <unordered_set>

namespace tausq {

const QItem* QItemset::find(ItemId item) const {
  auto it = std::lower_bound(items.begin(), items.end(), item,
                             [](const QItem& q, ItemId id) { return q.item < id; });
  return it != items.end() && it->item == item ? &*it : nullptr;
}

std::size_t QSequence::length() const {
  std::size_t n = 0;
  for (const auto& y : itemsets) n += y.size();
  return n;
}

const QItemset& QSequence::at(std::size_t j) const {
  if (j == 0 || j > itemsets.size())
    throw LookupError("itemset index " + std::to_string(j) + " out of range 1.." +
                      std::to_string(itemsets.size()));
  return itemsets[j - 1];
}

UtilityTable::UtilityTable(std::vector<Utility> eu, std::int64_t scale) : eu_(std::move(eu)), scale_(scale) {
  if (scale_ < 1) throw std::invalid_argument("utility scale must be >= 1");
  for (Utility u : eu_)
    if (u < 0) throw std::invalid_argument("negative external utility");
}

Utility UtilityTable::eu(ItemId item) const {
  if (item >= eu_.size()) throw LookupError("no external utility for item " + std::to_string(item));
  return eu_[item];
}

std::optional<ItemId> QDatabase::id_of(std::uint64_t label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) return std::nullopt;
  return static_cast<ItemId>(it - labels.begin());
}

void QDatabase::validate() const {
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw std::invalid_argument("item labels must be strictly ascending");
  std::unordered_set<std::uint64_t> sids;
  for (const auto& qs : sequences) {
    if (!sids.insert(qs.sid).second) throw std::invalid_argument("duplicate sid " + std::to_string(qs.sid));
    if (qs.itemsets.empty()) throw std::invalid_argument("empty sequence " + std::to_string(qs.sid));
    for (const auto& y : qs.itemsets) {
      if (y.items.empty()) throw std::invalid_argument("empty itemset in sequence " + std::to_string(qs.sid));
      for (std::size_t k = 0; k < y.items.size(); ++k) {
        const auto& q = y.items[k];
        if (k > 0 && y.items[k - 1].item >= q.item)
          throw std::invalid_argument("itemset not strictly ascending in sequence " + std::to_string(qs.sid));
        if (q.quantity < 1) throw std::invalid_argument("non-positive quantity in sequence " + std::to_string(qs.sid));
        if (!utable.covers(q.item) || q.item >= labels.size())
          throw std::invalid_argument("item " + std::to_string(q.item) + " has no utility entry");
      }
    }
  }
}

Pattern::Pattern(std::vector<std::vector<ItemId>> itemsets) : itemsets_(std::move(itemsets)) {
  for (const auto& x : itemsets_) {
    if (x.empty()) throw std::invalid_argument("pattern itemsets must be nonempty");
    for (std::size_t k = 1; k < x.size(); ++k)
      if (x[k - 1] >= x[k]) throw std::invalid_argument("pattern itemset not strictly ascending");
    length_ += x.size();
  }
}

Pattern Pattern::i_extend(ItemId item) const {
  if (itemsets_.empty() || item <= last_item())
    throw std::invalid_argument("I-extension item must exceed the last item");
  Pattern p = *this;
  p.itemsets_.back().push_back(item);
  ++p.length_;
  return p;
}

Pattern Pattern::s_extend(ItemId item) const {
  Pattern p = *this;
  p.itemsets_.push_back({item});
  ++p.length_;
  return p;
}

Utility item_utility(ItemId item, std::size_t j, const QSequence& qs, const UtilityTable& ut) {
  const QItem* q = qs.at(j).find(item);
  if (q == nullptr)
    throw LookupError("item " + std::to_string(item) + " absent from itemset " + std::to_string(j));
  return q->quantity * ut.eu(item);
}

Utility itemset_utility(std::size_t j, const QSequence& qs, const UtilityTable& ut) {
  Utility u = 0;
  for (const auto& q : qs.at(j).items) u += q.quantity * ut.eu(q.item);
  return u;
}

Rational itemset_avg_utility(std::size_t j, const QSequence& qs, const UtilityTable& ut) {
  return Rational(itemset_utility(j, qs, ut), static_cast<std::int64_t>(qs.at(j).size()));
}

Utility sequence_utility(const QSequence& qs, const UtilityTable& ut) {
  Utility u = 0;
  for (std::size_t j = 1; j <= qs.size(); ++j) u += itemset_utility(j, qs, ut);
  return u;
}

Rational sequence_avg_utility(const QSequence& qs, const UtilityTable& ut) {
  return Rational(sequence_utility(qs, ut), static_cast<std::int64_t>(qs.length()));
}

Utility database_utility(std::span<const QSequence> seqs, const UtilityTable& ut) {
  Utility u = 0;
  for (const auto& qs : seqs) u += sequence_utility(qs, ut);
  return u;
}

namespace {

bool subset_of(const std::vector<ItemId>& x, const QItemset& y) {
  return std::all_of(x.begin(), x.end(), [&](ItemId i) { return y.contains(i); });
}

bool subset_of(const std::vector<ItemId>& x, const std::vector<ItemId>& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

void collect_instances(const Pattern& pat, const QSequence& qs, std::size_t v, std::size_t from,
                       InstancePosition& cur, std::vector<InstancePosition>& out) {
  if (v == pat.size()) {
    out.push_back(cur);
    return;
  }
  // leave room for the remaining pattern itemsets
  std::size_t last = qs.size() - (pat.size() - v - 1);
  for (std::size_t j = from; j <= last; ++j) {
    if (!subset_of(pat.itemsets()[v], qs.itemsets[j - 1])) continue;
    cur.push_back(j);
    collect_instances(pat, qs, v + 1, j + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

bool contains(const Pattern& pat, const QSequence& qs) {
  std::size_t j = 0;
  for (const auto& x : pat.itemsets()) {
    while (j < qs.size() && !subset_of(x, qs.itemsets[j])) ++j;
    if (j == qs.size()) return false;
    ++j;
  }
  return true;
}

bool contains(const Pattern& sub, const Pattern& super) {
  std::size_t j = 0;
  const auto& ys = super.itemsets();
  for (const auto& x : sub.itemsets()) {
    while (j < ys.size() && !subset_of(x, ys[j])) ++j;
    if (j == ys.size()) return false;
    ++j;
  }
  return true;
}

std::vector<InstancePosition> instances(const Pattern& pat, const QSequence& qs) {
  std::vector<InstancePosition> out;
  if (pat.size() > qs.size()) return out;
  if (pat.empty()) {
    out.emplace_back();
    return out;
  }
  InstancePosition cur;
  collect_instances(pat, qs, 0, 1, cur, out);
  return out;
}

Utility instance_utility(const Pattern& pat, const InstancePosition& p, const QSequence& qs,
                         const UtilityTable& ut) {
  if (p.size() != pat.size()) throw std::invalid_argument("instance position length differs from pattern size");
  Utility u = 0;
  for (std::size_t v = 0; v < p.size(); ++v)
    for (ItemId i : pat.itemsets()[v]) u += item_utility(i, p[v], qs, ut);
  return u;
}

Utility pattern_utility_in_seq(const Pattern& pat, const QSequence& qs, const UtilityTable& ut) {
  auto ps = instances(pat, qs);
  if (ps.empty()) throw LookupError("pattern does not occur in sequence " + std::to_string(qs.sid));
  Utility best = 0;
  for (const auto& p : ps) best = std::max(best, instance_utility(pat, p, qs, ut));
  return best;
}

Utility pattern_utility(const Pattern& pat, std::span<const QSequence> db_t, const UtilityTable& ut) {
  Utility total = 0;
  for (const auto& qs : db_t)
    if (contains(pat, qs)) total += pattern_utility_in_seq(pat, qs, ut);
  return total;
}

Rational pattern_avg_utility(const Pattern& pat, std::span<const QSequence> db_t, const UtilityTable& ut) {
  if (pat.empty()) return Rational(0);
  return Rational(pattern_utility(pat, db_t, ut), static_cast<std::int64_t>(pat.length()));
}

}  // namespace tausq
