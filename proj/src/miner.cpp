#include "tausq/miner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "tausq/projection.hpp"

namespace tausq {

namespace {

using RowPairs = std::vector<std::pair<ItemId, std::uint32_t>>;

// Groups sorted (item, row) pairs into per-item row lists.
template <class F>
void for_each_group(RowPairs& pairs, F&& f) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<std::uint32_t> rows;
  std::size_t i = 0;
  while (i < pairs.size()) {
    const ItemId item = pairs[i].first;
    rows.clear();
    for (; i < pairs.size() && pairs[i].first == item; ++i) rows.push_back(pairs[i].second);
    f(item, std::span<const std::uint32_t>(rows));
  }
}

class Miner {
 public:
  Miner(const SearchSpace& sp, const MiningConfig& cfg, const UtilityTable& ut, MiningStats& stats,
        const std::vector<QSequence>* audit_db)
      : sp_(sp), cfg_(cfg), ut_(ut), stats_(stats), audit_db_(audit_db) {}

  std::vector<MinedPattern> run() {
    RowPairs pairs;
    for (std::uint32_t s = 0; s < sp_.seqs.size(); ++s)
      for (const auto& c : sp_.matrices[s].cells) pairs.emplace_back(c.item, s);
    for_each_group(pairs, [&](ItemId item, std::span<const std::uint32_t> rows) {
      ProjectedDB child = initial_projection(sp_, item, drop(), rows);
      if (child.rows.empty()) return;
      if (on(2)) {
        Utility filtered = 0;
        for (const auto& row : child.rows) {
          if (!sp_.in_dt[row.seq]) continue;
          if (std::any_of(row.entries.begin(), row.entries.end(), [](const auto& e) { return e.feasible; }))
            filtered += sp_.seq_utility[row.seq];
        }
        if (!strategy2_keep(filtered, 1, child.qsuf_len, sp_.threshold)) {
          ++stats_.pruned[1];
          return;
        }
      }
      aucalcu(std::move(child));
    });
    std::sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
    return std::move(out_);
  }

 private:
  bool on(int k) const { return cfg_.strategies[k - 1]; }
  bool drop() const { return on(2); }

  void aucalcu(ProjectedDB node) {
    ++stats_.candidates;
    live_rows_ += node.rows.size();
    stats_.peak_rows = std::max<std::uint64_t>(stats_.peak_rows, live_rows_);
    const std::size_t len = node.pattern.length();
    const bool in_dt = std::any_of(node.rows.begin(), node.rows.end(), [&](const HeadRow& r) { return sp_.in_dt[r.seq] != 0; });
    if (in_dt && sp_.threshold.reached(node.utility, static_cast<__int128>(len)) &&
        contains(sp_.target->pattern(), node.pattern)) {
      emit(node);
    }
    const bool can_grow = !cfg_.max_pattern_length || len < *cfg_.max_pattern_length;
    if (can_grow) {
      annotate_bounds(sp_, node);
      if (on(5) && !sp_.threshold.reached(node.srau_db.num, node.srau_db.den)) {
        ++stats_.pruned[4];
      } else {
        pgrowth(node);
      }
    }
    live_rows_ -= node.rows.size();
  }

  void emit(const ProjectedDB& node) {
    MinedPattern m{node.pattern, node.utility, Rational(node.utility, static_cast<std::int64_t>(node.pattern.length()))};
    if (audit_db_) {
      const Rational au = pattern_avg_utility(node.pattern, *audit_db_, ut_);
      if (au != m.au) throw AuditFailure("au mismatch for an emitted pattern");
      if (!sp_.threshold.reached(au)) throw AuditFailure("emitted pattern below threshold");
      if (!contains(sp_.target->pattern(), node.pattern)) throw AuditFailure("emitted pattern misses the target");
    }
    out_.push_back(std::move(m));
  }

  void pgrowth(const ProjectedDB& node) {
    RowPairs ipairs, spairs;
    for (std::uint32_t r = 0; r < node.rows.size(); ++r) {
      const auto& row = node.rows[r];
      const auto& qm = sp_.matrices[row.seq];
      for (const auto& e : row.entries) {
        for (std::uint32_t k = e.cell + 1; k < qm.col_end(e.eid); ++k) ipairs.emplace_back(qm.cells[k].item, r);
      }
      const std::size_t first = row.entries.front().eid;
      if (first < qm.columns()) {
        for (std::uint32_t k = qm.col_start(first + 1); k < qm.cells.size(); ++k)
          spairs.emplace_back(qm.cells[k].item, r);
      }
    }
    // Processing order: I-extensions before S-extensions, ascending item.
    for_each_group(ipairs, [&](ItemId item, std::span<const std::uint32_t> rows) {
      try_child(node, item, ExtType::I, rows);
    });
    for_each_group(spairs, [&](ItemId item, std::span<const std::uint32_t> rows) {
      try_child(node, item, ExtType::S, rows);
    });
  }

  void try_child(const ProjectedDB& node, ItemId item, ExtType ext, std::span<const std::uint32_t> rows) {
    ProjectedDB child = extend_projection(sp_, node, item, ext, drop(), rows);
    if (child.rows.empty()) return;
    const std::size_t len = child.pattern.length();
    const ChildSummary s = summarize_child(sp_, node, child);
    if (on(2) && !strategy2_keep(s.filtered_utility, len, child.qsuf_len, sp_.threshold)) {
      ++stats_.pruned[1];
      return;
    }
    const int s34 = ext == ExtType::S ? 3 : 4;
    if (on(s34) && !strategy34_keep(s.best_util, s.best_util_ru - s.best_util, len, child.qsuf_len, sp_.threshold)) {
      ++stats_.pruned[s34 - 1];
      return;
    }
    if (on(6) && !sp_.threshold.reached(s.tdau.num, s.tdau.den)) {
      ++stats_.pruned[5];
      return;
    }
    aucalcu(std::move(child));
  }

 private:
  const SearchSpace& sp_;
  const MiningConfig& cfg_;
  const UtilityTable& ut_;
  MiningStats& stats_;
  const std::vector<QSequence>* audit_db_;
  std::vector<MinedPattern> out_;
  std::uint64_t live_rows_ = 0;
};

}  // namespace

MiningResult mine(const QDatabase& db, const MiningConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  MiningResult res;
  if (cfg.xi < Rational(0) || cfg.xi > Rational(1)) throw std::invalid_argument("xi must lie in [0,1]");
  if (cfg.max_pattern_length && *cfg.max_pattern_length == 0) throw std::invalid_argument("max pattern length must be >= 1");
  TargetQuery t(cfg.target);
  const FilterResult fr = filter_database(db, t, cfg.xi);
  res.stats.u_dt = fr.u_dt;
  res.stats.dt_size = fr.kept.size();
  const bool s1 = cfg.strategies[0];
  auto finish = [&] {
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };
  if (fr.kept.empty() || (s1 && fr.early_exit)) {
    res.stats.early_exit = true;
    return finish();
  }

  std::vector<const QSequence*> seqs;
  std::vector<char> in_dt;
  if (s1) {
    for (auto i : fr.kept) {
      seqs.push_back(&db.sequences[i]);
      in_dt.push_back(1);
    }
    res.stats.pruned[0] = db.sequences.size() - fr.kept.size();
  } else {
    in_dt.assign(db.sequences.size(), 0);
    for (auto i : fr.kept) in_dt[i] = 1;
    for (const auto& qs : db.sequences) seqs.push_back(&qs);
  }

  const SearchSpace sp = make_search_space(std::move(seqs), std::move(in_dt), db.utable, db.num_items(), t,
                                           cfg.mode == MiningMode::Targeted, Threshold(cfg.xi, fr.u_dt), cfg.bound);
  std::vector<QSequence> audit;
  if (cfg.self_audit)
    for (auto i : fr.kept) audit.push_back(db.sequences[i]);
  Miner m(sp, cfg, db.utable, res.stats, cfg.self_audit ? &audit : nullptr);
  res.patterns = m.run();
  return finish();
}

MiningResult post_filter_mine(const QDatabase& db, MiningConfig cfg) {
  cfg.mode = MiningMode::PostFilter;
  return mine(db, cfg);
}

}  // namespace tausq
