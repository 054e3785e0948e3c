#include "tausq/oracle.hpp"

#include <algorithm>
#include <map>

namespace tausq {

namespace {

bool subset(const std::vector<ItemId>& x, const QItemset& y) {
  for (ItemId i : x) {
    bool found = false;
    for (const auto& q : y.items) found = found || q.item == i;
    if (!found) return false;
  }
  return true;
}

bool subset(const std::vector<ItemId>& x, const std::vector<ItemId>& y) {
  return std::all_of(x.begin(), x.end(), [&](ItemId i) { return std::find(y.begin(), y.end(), i) != y.end(); });
}

// Backtracking containment: itemset k of `p` placed at some index >= from.
template <class Seq>
bool embeds(const Pattern& p, std::size_t k, const Seq& s, std::size_t from) {
  if (k == p.size()) return true;
  for (std::size_t j = from; j < s.size(); ++j)
    if (subset(p.itemsets()[k], s[j]) && embeds(p, k + 1, s, j + 1)) return true;
  return false;
}

Utility itemset_part(const std::vector<ItemId>& x, const QItemset& y, const UtilityTable& ut) {
  Utility u = 0;
  for (ItemId i : x)
    for (const auto& q : y.items)
      if (q.item == i) u += q.quantity * ut.eu(i);
  return u;
}

// Max over every increasing index tuple of the summed utility; -1 if none.
Utility best_instance(const Pattern& p, std::size_t k, const QSequence& qs, std::size_t from, const UtilityTable& ut) {
  if (k == p.size()) return 0;
  Utility best = -1;
  for (std::size_t j = from; j < qs.itemsets.size(); ++j) {
    if (!subset(p.itemsets()[k], qs.itemsets[j])) continue;
    const Utility rest = best_instance(p, k + 1, qs, j + 1, ut);
    if (rest < 0) continue;
    best = std::max(best, itemset_part(p.itemsets()[k], qs.itemsets[j], ut) + rest);
  }
  return best;
}

struct Node {
  Pattern pattern;
  std::vector<std::size_t> support;  // indices into D_T
};

}  // namespace

OracleUniverse oracle_enumerate(const QDatabase& db, const Pattern& target, std::size_t max_pattern_length,
                                std::uint64_t budget) {
  if (max_pattern_length < target.length())
    throw std::invalid_argument("oracle length cap is shorter than the target");
  OracleUniverse out;
  std::vector<const QSequence*> dt;
  for (const auto& qs : db.sequences) {
    if (embeds(target, 0, qs.itemsets, 0)) {
      dt.push_back(&qs);
      for (const auto& y : qs.itemsets)
        for (const auto& q : y.items) out.u_dt += q.quantity * db.utable.eu(q.item);
    }
  }
  std::vector<ItemId> items;
  for (auto* qs : dt)
    for (const auto& y : qs->itemsets)
      for (const auto& q : y.items) items.push_back(q.item);
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  std::uint64_t examined = 0;
  std::vector<Node> level;
  for (ItemId i : items) {
    Node n{Pattern(std::vector<std::vector<ItemId>>{{i}}), {}};
    for (std::size_t s = 0; s < dt.size(); ++s)
      if (embeds(n.pattern, 0, dt[s]->itemsets, 0)) n.support.push_back(s);
    level.push_back(std::move(n));
  }
  for (std::size_t len = 1; !level.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& n : level) {
      if (++examined > budget) throw OracleBudgetExceeded("oracle budget of " + std::to_string(budget) + " patterns exceeded");
      // target containment at pattern level, by backtracking over itemsets
      if (embeds(target, 0, n.pattern.itemsets(), 0)) {
        Utility sum = 0;
        for (auto s : n.support) sum += best_instance(n.pattern, 0, *dt[s], 0, db.utable);
        out.patterns.push_back({n.pattern, sum, Rational(sum, static_cast<std::int64_t>(len))});
      }
      if (len == max_pattern_length) continue;
      auto grow = [&](Pattern child) {
        Node c{std::move(child), {}};
        for (auto s : n.support)
          if (embeds(c.pattern, 0, dt[s]->itemsets, 0)) c.support.push_back(s);
        if (!c.support.empty()) next.push_back(std::move(c));
      };
      for (ItemId i : items)
        if (i > n.pattern.last_item()) grow(n.pattern.i_extend(i));
      for (ItemId i : items) grow(n.pattern.s_extend(i));
    }
    level = std::move(next);
  }
  std::sort(out.patterns.begin(), out.patterns.end(),
            [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
  return out;
}

std::vector<OraclePattern> oracle_select(const OracleUniverse& u, const Rational& xi) {
  std::vector<OraclePattern> r;
  for (const auto& p : u.patterns) {
    // utility / len >= xi * u_dt
    const __int128 lhs = static_cast<__int128>(p.utility) * xi.den();
    const __int128 rhs = static_cast<__int128>(xi.num()) * u.u_dt * static_cast<__int128>(p.pattern.length());
    if (lhs >= rhs) r.push_back(p);
  }
  return r;
}

std::vector<OraclePattern> oracle_mine(const QDatabase& db, const OracleConfig& cfg) {
  return oracle_select(oracle_enumerate(db, cfg.target, cfg.max_pattern_length, cfg.budget), cfg.xi);
}

std::string to_string(DiscrepancyKind k) {
  switch (k) {
    case DiscrepancyKind::Missing:
      return "missing";
    case DiscrepancyKind::Spurious:
      return "spurious";
    case DiscrepancyKind::ValueMismatch:
      return "value_mismatch";
  }
  return "?";
}

std::vector<Discrepancy> compare(const std::vector<MinedPattern>& miner, const std::vector<OraclePattern>& oracle) {
  std::map<Pattern, Rational> m, o;
  std::vector<Discrepancy> out;
  for (const auto& p : miner)
    if (!m.emplace(p.pattern, p.au).second)
      out.push_back({p.pattern, p.au, std::nullopt, DiscrepancyKind::Spurious});  // duplicate emission
  for (const auto& p : oracle) o.emplace(p.pattern, p.au);
  for (const auto& [pat, au] : o) {
    auto it = m.find(pat);
    if (it == m.end())
      out.push_back({pat, std::nullopt, au, DiscrepancyKind::Missing});
    else if (it->second != au)
      out.push_back({pat, it->second, au, DiscrepancyKind::ValueMismatch});
  }
  for (const auto& [pat, au] : m)
    if (!o.count(pat)) out.push_back({pat, au, std::nullopt, DiscrepancyKind::Spurious});
  return out;
}

}  // namespace tausq
