// Acceptance run: one PASS/FAIL line per criterion, followed by detail lines.
// Exit status is nonzero when a hard criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tausq/bounds.hpp"
#include "tausq/ingest.hpp"
#include "tausq/miner.hpp"
#include "tausq/oracle.hpp"
#include "tausq/projection.hpp"
#include "tausq/suite.hpp"
#include "tausq/target.hpp"

using namespace tausq;

namespace {

struct Outcome {
  bool pass = true;
  bool soft = false;
  std::vector<std::string> notes;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
  }
  void note(const std::string& s) { notes.push_back("  " + s); }
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// a..i are labels 1..9, dense ids 0..8
constexpr ItemId a = 0, b = 1, c = 2, d = 3, e = 4, h = 7, i_ = 8;

Pattern P(std::vector<std::vector<ItemId>> v) { return Pattern(std::move(v)); }

QDatabase running_example() {
  return load_database(std::string(TAUSQ_FIXTURE_DIR) + "/table1.txt", std::string(TAUSQ_FIXTURE_DIR) + "/table2.txt");
}

std::string str(const Rational& r) { return r.fraction_string(); }

const std::vector<Rational> kXiGrid{Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(2, 5)};

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto db = running_example();
  MiningConfig cfg;
  cfg.xi = Rational(1, 10);
  cfg.target = P({{d}, {e}});
  const auto res = mine(db, cfg);
  const double ms = elapsed_ms(t0);
  o.check(res.stats.u_dt == 333, "u(D_T) = " + std::to_string(res.stats.u_dt));
  auto it = std::find_if(res.patterns.begin(), res.patterns.end(),
                         [](const MinedPattern& p) { return p.pattern == P({{c, d}, {e}}); });
  o.check(it != res.patterns.end() && it->au == Rational(45), "<{cd},{e}> emitted with au = " +
                                                                   (it == res.patterns.end() ? "-" : str(it->au)));
  const auto& qs1 = db.sequences[0];
  o.check(sequence_utility(qs1, db.utable) == 52, "u(QS1) = " + std::to_string(sequence_utility(qs1, db.utable)));
  o.check(sequence_avg_utility(qs1, db.utable) == Rational(13, 2),
          "au(QS1) = " + str(sequence_avg_utility(qs1, db.utable)));
  const auto u_bde = pattern_utility_in_seq(P({{b, d}, {e}}), qs1, db.utable);
  o.check(u_bde == 27, "u(<{bd},{e}>, QS1) = " + std::to_string(u_bde));
  o.check(ms < 1000, "runtime " + std::to_string(ms) + " ms");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto db = running_example();
  {
    const TargetQuery t(P({{d}, {b, c, d}, {a, i_}}));
    const auto f = filter_database(db, t, Rational(1, 5));
    // 0.2 * 52 * 6 = 62.4
    o.check(f.u_dt == 52 && f.kept.size() == 1 && f.early_exit,
            "strategy 1: u(D_T) = " + std::to_string(f.u_dt) + ", early exit " + (f.early_exit ? "yes" : "no"));
  }
  {
    const TargetQuery t(P({{c, d}}));
    const Rational xi(1, 5);
    const auto f = filter_database(db, t, xi);
    const Threshold th(xi, f.u_dt);
    std::vector<const QSequence*> seqs;
    for (auto k : f.kept) seqs.push_back(&db.sequences[k]);
    auto sp = make_search_space(seqs, std::vector<char>(seqs.size(), 1), db.utable, db.num_items(), t, true, th,
                                BoundConfig{});
    const auto pdb = initial_projection(sp, h, true);
    Utility filtered = 0;
    for (const auto& row : pdb.rows) filtered += sp.seq_utility[row.seq];
    const bool keep = strategy2_keep(filtered, 1, pdb.qsuf_len, th);
    o.check(filtered == 63 && !keep, "strategy 2: item h filtered utility " + std::to_string(filtered) +
                                         (keep ? " kept" : " pruned"));
  }
  {
    const TargetQuery t(P({{c, d}, {e}}));
    const Rational xi(1, 10);
    const auto f = filter_database(db, t, xi);
    const Threshold th(xi, f.u_dt);
    std::vector<const QSequence*> seqs;
    for (auto k : f.kept) seqs.push_back(&db.sequences[k]);
    auto sp = make_search_space(seqs, std::vector<char>(seqs.size(), 1), db.utable, db.num_items(), t, true, th,
                                BoundConfig{});
    const auto pa = initial_projection(sp, a, true);
    const auto s_ext = extend_projection(sp, pa, c, ExtType::S, true);
    const auto i_ext = extend_projection(sp, pa, c, ExtType::I, true);
    const auto ss = summarize_child(sp, pa, s_ext);
    const auto is = summarize_child(sp, pa, i_ext);
    const Utility s_ru = ss.best_util_ru - ss.best_util, i_ru = is.best_util_ru - is.best_util;
    const bool s_keep = strategy34_keep(ss.best_util, s_ru, 2, s_ext.qsuf_len, th);
    const bool i_keep = strategy34_keep(is.best_util, i_ru, 2, i_ext.qsuf_len, th);
    // threshold side: 33.3 * 4 = 133.2
    o.check(ss.best_util == 52 && s_ru == 106 && s_keep,
            "strategy 3: " + std::to_string(ss.best_util) + " + " + std::to_string(s_ru) + (s_keep ? " kept" : " pruned"));
    o.check(is.best_util == 26 && i_ru == 82 && !i_keep,
            "strategy 4: " + std::to_string(is.best_util) + " + " + std::to_string(i_ru) + (i_keep ? " kept" : " pruned"));
    o.check(Rational(f.u_dt) * xi * Rational(4) == Rational(1332, 10), "threshold 133.2");
  }
  return o;
}

struct SuiteCell {
  std::uint64_t seed;
  Rational xi;
  std::string combo;
  std::uint64_t candidates;
};

// Runs the differential suite for one bound variant. Returns discrepancy count.
std::size_t run_suite(BoundVariant variant, Outcome& o, std::vector<SuiteCell>* cells,
                      std::vector<SuiteCell>* post_cells) {
  std::size_t total = 0;
  bool reported = false;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_instance(seed);
    const auto uni = oracle_enumerate(inst.db, inst.target, 8, 50'000'000);
    for (const auto& xi : kXiGrid) {
      const auto expected = oracle_select(uni, xi);
      for (const auto& combo : toggle_combos()) {
        MiningConfig cfg;
        cfg.xi = xi;
        cfg.target = inst.target;
        cfg.bound.variant = variant;
        cfg.strategies = combo.strategies;
        cfg.max_pattern_length = 8;
        const auto res = mine(inst.db, cfg);
        const auto diff = compare(res.patterns, expected);
        total += diff.size();
        if (!diff.empty() && !reported) {
          reported = true;
          o.note("first divergence: seed " + std::to_string(seed) + " xi " + str(xi) + " combo " + combo.name + " " +
                 to_string(diff.front().kind) + " " + format_pattern(inst.db, diff.front().pattern));
          o.note("reproducer target: " + format_pattern(inst.db, inst.target));
          std::istringstream lines(write_database(inst.db));
          for (std::string l; std::getline(lines, l);) o.note("  db: " + l);
        }
        if (cells) cells->push_back({seed, xi, combo.name, res.stats.candidates});
        if (post_cells && combo.name == "all-on") {
          const auto pf = post_filter_mine(inst.db, cfg);
          post_cells->push_back({seed, xi, combo.name, pf.stats.candidates});
        }
      }
    }
  }
  return total;
}

std::vector<SuiteCell> g_cells, g_post_cells;

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto n = run_suite(BoundVariant::SRAU_TDAU, o, &g_cells, &g_post_cells);
  const double ms = elapsed_ms(t0);
  o.check(n == 0, "discrepancies over 100 seeds x 4 xi x 8 combos: " + std::to_string(n));
  o.check(ms < 600'000, "runtime " + std::to_string(ms / 1000) + " s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  o.soft = true;
  const auto n = run_suite(BoundVariant::vSRAU_vTDAU, o, nullptr, nullptr);
  o.check(n == 0, "vSRAU divergences: " + std::to_string(n));
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto find = [](std::uint64_t seed, const Rational& xi, const std::string& combo) -> std::uint64_t {
    for (const auto& c : g_cells)
      if (c.seed == seed && c.xi == xi && c.combo == combo) return c.candidates;
    throw std::logic_error("missing cell");
  };
  std::size_t on_gt_off = 0, xi_increase = 0, targeted_le = 0, cells = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::uint64_t prev = UINT64_MAX;
    for (const auto& xi : kXiGrid) {
      const auto on = find(seed, xi, "all-on");
      if (on > find(seed, xi, "all-off")) ++on_gt_off;
      if (on > prev) ++xi_increase;
      prev = on;
    }
  }
  for (const auto& pc : g_post_cells) {
    ++cells;
    if (find(pc.seed, pc.xi, "all-on") <= pc.candidates) ++targeted_le;
  }
  o.check(on_gt_off == 0, "cells with candidates(all-on) > candidates(all-off): " + std::to_string(on_gt_off));
  o.check(xi_increase == 0, "xi steps where candidates increased: " + std::to_string(xi_increase));
  const double frac = cells ? static_cast<double>(targeted_le) / static_cast<double>(cells) : 0;
  o.check(frac >= 0.95, "targeted <= post-filter in " + std::to_string(targeted_le) + "/" + std::to_string(cells) +
                            " cells");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const TargetQuery t(P({{c, d}, {a, e}}));
  auto f = flags_for(P({{a, b}, {c}}), t);
  o.check(f.imatch == 0 && f.iimatch == 1, "<{ab},{c}>: imatch 0, iimatch 1");
  f = update_flags(f, t, d, ExtType::I);
  o.check(f.imatch == 1 && f.iimatch == 0 && !f.frozen, "I-extend d: iimatch 1->2, rollover to imatch 1, iimatch 0");
  f = update_flags(f, t, a, ExtType::S);
  o.check(f.imatch == 1 && f.iimatch == 1, "S-extend a: iimatch 0->1");
  f = update_flags(f, t, e, ExtType::I);
  o.check(f.frozen && f.imatch == 2, "I-extend e: frozen at full match");
  const auto g = update_flags(f, t, h, ExtType::S);
  o.check(g == f, "frozen flags unchanged by further extension");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::vector<std::pair<LengthMode, std::string>> modes{
      {LengthMode::Both, "both"}, {LengthMode::RrsOnly, "rrs"}, {LengthMode::QsufOnly, "qsuf"}, {LengthMode::None, "none"}};
  std::size_t set_mismatch = 0, order_violations = 0, runs = 0;
  std::vector<std::string> mismatch_modes;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = random_instance(seed);
    for (const auto& xi : kXiGrid) {
      ++runs;
      std::vector<MiningResult> res;
      for (const auto& [mode, name] : modes) {
        MiningConfig cfg;
        cfg.xi = xi;
        cfg.target = inst.target;
        cfg.bound.variant = BoundVariant::vSRAU_vTDAU;
        cfg.bound.length_mode = mode;
        cfg.max_pattern_length = 8;
        res.push_back(mine(inst.db, cfg));
      }
      for (std::size_t k = 1; k < res.size(); ++k) {
        if (res[k].patterns != res[0].patterns) {
          ++set_mismatch;
          mismatch_modes.push_back(modes[k].second + "@seed" + std::to_string(seed) + "/xi" + str(xi));
        }
      }
      const auto both = res[0].stats.candidates, rrs = res[1].stats.candidates, qsuf = res[2].stats.candidates,
                 none = res[3].stats.candidates;
      if (!(both <= std::min(rrs, qsuf) && std::max(rrs, qsuf) <= none)) {
        ++order_violations;
        if (order_violations <= 3)
          o.note("order violation seed " + std::to_string(seed) + " xi " + str(xi) + ": both " +
                 std::to_string(both) + " rrs " + std::to_string(rrs) + " qsuf " + std::to_string(qsuf) + " none " +
                 std::to_string(none));
      }
    }
  }
  o.check(set_mismatch == 0, "result sets differing from mode both: " + std::to_string(set_mismatch) + " of " +
                                 std::to_string(runs * 3));
  for (std::size_t k = 0; k < std::min<std::size_t>(mismatch_modes.size(), 5); ++k) o.note("  " + mismatch_modes[k]);
  o.check(order_violations == 0, "runs violating both <= min(rrs,qsuf) <= max(rrs,qsuf) <= none: " +
                                     std::to_string(order_violations) + " of " + std::to_string(runs));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto target = P({{2}, {6}});
  auto timed = [&](std::size_t n) {
    GeneratorSpec g;
    g.seed = 7;
    g.num_sequences = n;
    g.num_items = 50;
    g.avg_seq_size = 5;
    g.avg_set_size = 2;
    g.planted = target;
    g.plant_probability = 0.5;
    const auto db = generate(g);
    MiningConfig cfg;
    cfg.xi = Rational(1, 200);
    cfg.target = target;
    std::vector<double> ms;
    std::size_t found = 0;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = mine(db, cfg);
      ms.push_back(elapsed_ms(t0));
      found = r.patterns.size();
    }
    std::sort(ms.begin(), ms.end());
    o.note(std::to_string(n) + " sequences: median " + std::to_string(ms[1]) + " ms, " + std::to_string(found) +
           " patterns");
    return ms[1];
  };
  const double t20 = timed(20'000), t40 = timed(40'000);
  o.check(t40 / t20 <= 3.0, "time ratio 40k/20k = " + std::to_string(t40 / t20));
  o.check(t20 < 120'000 && t40 < 120'000, "each cell under 2 minutes");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 running example", criterion1},        {"2 strategy vectors", criterion2},
      {"3 oracle equivalence (SRAU)", criterion3}, {"4 vSRAU soft equivalence", criterion4},
      {"5 pruning direction", criterion5},      {"6 flag mechanics", criterion6},
      {"7 ablation consistency", criterion7},   {"8 scaling sanity", criterion8},
  };
  int hard_failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.note(std::string("exception: ") + ex.what());
    }
    const char* verdict = o.pass ? "PASS" : (o.soft ? "SOFT-FAIL" : "FAIL");
    std::cout << "criterion " << name << ": " << verdict << "\n";
    for (const auto& n : o.notes) std::cout << n << "\n";
    std::cout.flush();
    if (!o.pass && !o.soft) ++hard_failures;
  }
  std::cout << "hard failures: " << hard_failures << "\n";
  return hard_failures == 0 ? 0 : 1;
}
