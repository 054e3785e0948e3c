#include "tausq/projection.hpp"

#include <algorithm>
#include <stdexcept>

namespace tausq {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void set_flags(const SearchSpace& sp, ProjectedDB& pdb) {
  if (!sp.targeted || !sp.target) {
    pdb.qsuf_len = 0;
    pdb.qsuf_items.clear();
    return;
  }
  pdb.qsuf_len = qsuf_length(pdb.flags, *sp.target);
  pdb.qsuf_items = sorted_items(qsuf_pattern(pdb.flags, *sp.target));
}

bool entry_feasible(const SearchSpace& sp, const ProjectedDB& pdb, std::uint32_t seq, std::uint32_t eid, ItemId item) {
  if (!sp.targeted || !sp.target) return true;
  if (!sp.in_dt[seq]) return false;
  return qsuf_feasible(sp.li[seq], eid, item, sp.seqs[seq]->at(eid), pdb.flags, *sp.target);
}

// Drops infeasible entries (optionally) and rows left empty, and counts the
// contributing rows and the node utility.
void finish(const SearchSpace& sp, ProjectedDB& pdb, bool drop_infeasible) {
  std::size_t out = 0;
  for (std::size_t r = 0; r < pdb.rows.size(); ++r) {
    auto& row = pdb.rows[r];
    if (drop_infeasible)
      std::erase_if(row.entries, [](const TargetedListEntry& e) { return !e.feasible; });
    if (row.entries.empty()) continue;
    if (out != r) pdb.rows[out] = std::move(row);
    ++out;
  }
  pdb.rows.resize(out);
  pdb.contributing = 0;
  pdb.utility = 0;
  for (const auto& row : pdb.rows) {
    if (!sp.in_dt[row.seq]) continue;
    Utility best = 0;
    bool any_feasible = false;
    for (const auto& e : row.entries) {
      best = std::max(best, e.util);
      any_feasible = any_feasible || e.feasible;
    }
    pdb.utility += best;
    if (any_feasible) ++pdb.contributing;
  }
}

}  // namespace

void RationalSum::add(const Rational& r) {
  if (r.num() == 0) return;
  if (r.den() == den) {
    num += r.num();
    return;
  }
  num = num * r.den() + static_cast<__int128>(r.num()) * den;
  den *= r.den();
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

SearchSpace make_search_space(std::vector<const QSequence*> seqs, std::vector<char> in_dt, const UtilityTable& ut,
                              std::size_t num_items, std::optional<TargetQuery> target, bool targeted,
                              Threshold th, BoundConfig bound) {
  if (seqs.size() != in_dt.size()) throw std::invalid_argument("in_dt size mismatch");
  SearchSpace sp;
  sp.matrices.reserve(seqs.size());
  sp.li.resize(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    sp.matrices.push_back(build_qmatrix(*seqs[i], ut));
    sp.seq_utility.push_back(sp.matrices.back().total);
    if (in_dt[i] && target) sp.li[i] = build_li_table(*seqs[i], *target);
  }
  sp.seqs = std::move(seqs);
  sp.in_dt = std::move(in_dt);
  sp.target = std::move(target);
  sp.targeted = targeted && sp.target.has_value();
  sp.threshold = th;
  sp.bound = bound;
  sp.num_items = num_items;
  return sp;
}

ProjectedDB initial_projection(const SearchSpace& sp, ItemId item, bool drop_infeasible,
                               std::optional<std::span<const std::uint32_t>> rows) {
  ProjectedDB pdb;
  pdb.pattern = Pattern(std::vector<std::vector<ItemId>>{{item}});
  if (sp.targeted) pdb.flags = update_flags(MatchFlags{}, *sp.target, item, ExtType::S);
  set_flags(sp, pdb);
  auto visit = [&](std::uint32_t s) {
    const auto& qm = sp.matrices[s];
    HeadRow row;
    row.seq = s;
    row.parent_row = s;
    for (std::size_t c = 1; c <= qm.columns(); ++c) {
      auto f = qm.find(item, c);
      if (!f) continue;
      TargetedListEntry e;
      e.eid = static_cast<std::uint32_t>(c);
      e.cell = *f;
      e.util = qm.cells[*f].utility;
      e.feasible = entry_feasible(sp, pdb, s, e.eid, item);
      row.entries.push_back(e);
    }
    if (!row.entries.empty()) pdb.rows.push_back(std::move(row));
  };
  if (rows) {
    for (auto s : *rows) visit(s);
  } else {
    for (std::uint32_t s = 0; s < sp.seqs.size(); ++s) visit(s);
  }
  finish(sp, pdb, drop_infeasible);
  return pdb;
}

ProjectedDB extend_projection(const SearchSpace& sp, const ProjectedDB& parent, ItemId item, ExtType ext,
                              bool drop_infeasible, std::optional<std::span<const std::uint32_t>> rows) {
  ProjectedDB child;
  if (ext == ExtType::I) {
    if (parent.pattern.empty() || item <= parent.pattern.last_item())
      throw std::invalid_argument("I-extension item must exceed the last item");
    child.pattern = parent.pattern.i_extend(item);
  } else {
    child.pattern = parent.pattern.s_extend(item);
  }
  child.flags = sp.targeted ? update_flags(parent.flags, *sp.target, item, ext) : MatchFlags{};
  set_flags(sp, child);

  auto visit = [&](std::uint32_t pr) {
    const auto& prow = parent.rows[pr];
    const auto& qm = sp.matrices[prow.seq];
    HeadRow row;
    row.seq = prow.seq;
    row.parent_row = pr;
    auto add = [&](std::uint32_t eid, std::uint32_t cell, Utility util) {
      TargetedListEntry e;
      e.eid = eid;
      e.cell = cell;
      e.util = util;
      e.feasible = entry_feasible(sp, child, row.seq, eid, item);
      row.entries.push_back(e);
    };
    if (ext == ExtType::I) {
      for (const auto& pe : prow.entries) {
        auto f = qm.find(item, pe.eid);
        if (f) add(pe.eid, *f, pe.util + qm.cells[*f].utility);
      }
    } else {
      std::size_t k = 0;
      Utility best = 0;
      bool have = false;
      for (std::size_t c = prow.entries.front().eid + 1; c <= qm.columns(); ++c) {
        while (k < prow.entries.size() && prow.entries[k].eid < c) {
          best = have ? std::max(best, prow.entries[k].util) : prow.entries[k].util;
          have = true;
          ++k;
        }
        auto f = qm.find(item, c);
        if (f) add(static_cast<std::uint32_t>(c), *f, best + qm.cells[*f].utility);
      }
    }
    if (!row.entries.empty()) child.rows.push_back(std::move(row));
  };
  if (rows) {
    for (auto r : *rows) visit(r);
  } else {
    for (std::uint32_t r = 0; r < parent.rows.size(); ++r) visit(r);
  }
  finish(sp, child, drop_infeasible);
  return child;
}

void annotate_bounds(const SearchSpace& sp, ProjectedDB& pdb) {
  pdb.srau_db = RationalSum{};
  const std::size_t len = pdb.pattern.length();
  for (auto& row : pdb.rows) {
    const auto& qm = sp.matrices[row.seq];
    Rational best(0);
    for (auto& e : row.entries) {
      const auto info = rrs_info_at(qm, e.cell, sp.threshold, pdb.contributing, pdb.qsuf_items);
      e.rrs_util = info.utility;
      e.rrs_count = static_cast<std::uint32_t>(info.count);
      e.merged_util = info.merged_qsuf_utility;
      const bool rs_empty = e.cell + 1 >= qm.cells.size();
      const Rational v = position_bound(e.util, info, rs_empty, e.feasible, len, pdb.qsuf_len, sp.bound);
      if (v > best) best = v;
    }
    row.srau = sp.in_dt[row.seq] ? best : Rational(0);
    pdb.srau_db.add(row.srau);
  }
}

ChildSummary summarize_child(const SearchSpace& sp, const ProjectedDB& parent, const ProjectedDB& child) {
  ChildSummary s;
  for (const auto& row : child.rows) {
    if (!sp.in_dt[row.seq]) continue;
    const auto& qm = sp.matrices[row.seq];
    bool any = false;
    Utility best = 0, best_util = 0;
    for (const auto& e : row.entries) {
      if (!e.feasible) continue;
      const Utility v = e.util + qm.cells[e.cell].ru;
      if (!any || v > best) {
        best = v;
        best_util = e.util;
      }
      any = true;
    }
    if (!any) continue;
    s.filtered_utility += sp.seq_utility[row.seq];
    s.best_util_ru += best;
    s.best_util += best_util;
    s.tdau.add(parent.rows[row.parent_row].srau);
  }
  return s;
}

}  // namespace tausq
