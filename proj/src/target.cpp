#include "tausq/target.hpp"

#include <algorithm>
#include <stdexcept>

namespace tausq {

TargetQuery::TargetQuery(Pattern pattern) : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw std::invalid_argument("target query must be nonempty");
  prefix_len_.assign(pattern_.size() + 1, 0);
  for (std::size_t k = 1; k <= pattern_.size(); ++k)
    prefix_len_[k] = prefix_len_[k - 1] + pattern_.itemsets()[k - 1].size();
}

FilterResult filter_database(const QDatabase& db, const TargetQuery& t, const Rational& xi) {
  if (xi < Rational(0) || xi > Rational(1)) throw std::invalid_argument("xi must lie in [0,1]");
  FilterResult r;
  for (std::size_t i = 0; i < db.sequences.size(); ++i) {
    if (contains(t.pattern(), db.sequences[i])) {
      r.kept.push_back(i);
      r.u_dt += sequence_utility(db.sequences[i], db.utable);
    }
  }
  // u_dt < |T| * xi * u_dt  <=>  u_dt * den < |T| * num * u_dt
  const __int128 lhs = static_cast<__int128>(r.u_dt) * xi.den();
  const __int128 rhs = static_cast<__int128>(t.length()) * xi.num() * r.u_dt;
  r.early_exit = r.kept.empty() || lhs < rhs;
  return r;
}

LIRow build_li_table(const QSequence& qs, const TargetQuery& t) {
  LIRow row(t.size());
  std::size_t j = qs.size() + 1;  // search strictly before j
  for (std::size_t k = t.size(); k >= 1; --k) {
    const auto& x = t.itemset(k);
    std::size_t found = 0;
    for (std::size_t c = j - 1; c >= 1; --c) {
      const auto& y = qs.itemsets[c - 1];
      if (std::all_of(x.begin(), x.end(), [&](ItemId i) { return y.contains(i); })) {
        found = c;
        break;
      }
    }
    if (found == 0) throw std::invalid_argument("sequence " + std::to_string(qs.sid) + " does not contain the target");
    row[k - 1] = found;
    j = found;
  }
  return row;
}

bool suffix_fits_after(const LIRow& li, std::size_t first, std::size_t pos) {
  if (first > li.size()) return true;
  return pos < li[first - 1];
}

MatchFlags update_flags(MatchFlags f, const TargetQuery& t, ItemId appended, ExtType ext) {
  if (f.frozen) return f;
  if (ext == ExtType::S) {
    f.iimatch = 0;
    f.locked = false;
  } else if (f.locked) {
    return f;
  }
  const auto& x = t.itemset(f.imatch + 1);
  const ItemId expected = x[f.iimatch];
  if (appended == expected) {
    if (++f.iimatch == x.size()) {
      ++f.imatch;
      f.iimatch = 0;
      f.locked = true;
      if (f.imatch == t.size()) {
        f.frozen = true;
        f.locked = false;
      }
    }
  } else if (appended > expected) {
    // the expected item can no longer join this pattern itemset
    f.iimatch = 0;
  }
  return f;
}

MatchFlags flags_for(const Pattern& p, const TargetQuery& t) {
  MatchFlags f;
  for (const auto& x : p.itemsets()) {
    for (std::size_t k = 0; k < x.size(); ++k) f = update_flags(f, t, x[k], k == 0 ? ExtType::S : ExtType::I);
  }
  return f;
}

std::size_t qsuf_length(const MatchFlags& f, const TargetQuery& t) {
  if (f.frozen) return 0;
  return t.length() - t.prefix_length(f.imatch) - f.iimatch;
}

Pattern qsuf_pattern(const MatchFlags& f, const TargetQuery& t) {
  if (f.frozen) return Pattern();
  std::vector<std::vector<ItemId>> sets;
  const auto& x = t.itemset(f.imatch + 1);
  sets.emplace_back(x.begin() + f.iimatch, x.end());
  for (std::size_t k = f.imatch + 2; k <= t.size(); ++k) sets.push_back(t.itemset(k));
  return Pattern(std::move(sets));
}

bool qsuf_feasible(const LIRow& li, std::size_t ext_pos, ItemId ext_item, const QItemset& ext_itemset,
                   const MatchFlags& f, const TargetQuery& t) {
  if (f.frozen) return true;
  const std::size_t next = f.imatch + 1;
  if (suffix_fits_after(li, next, ext_pos)) return true;
  if (f.locked) return false;
  // complete target itemset `next` inside the current extension itemset
  const auto& x = t.itemset(next);
  for (std::size_t k = f.iimatch; k < x.size(); ++k) {
    if (x[k] <= ext_item || !ext_itemset.contains(x[k])) return false;
  }
  return suffix_fits_after(li, next + 1, ext_pos);
}

}  // namespace tausq
