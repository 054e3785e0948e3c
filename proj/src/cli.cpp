#include "tausq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "tausq/ingest.hpp"
#include "tausq/oracle.hpp"
#include "tausq/rng.hpp"
#include "tausq/suite.hpp"

namespace tausq {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Exit-code carrying error for the subcommand bodies.
struct Exit {
  int code;
  std::string message;
};

struct EngineFlags {
  std::string bound = "srau";
  std::string length_mode = "both";
  std::string mode = "targeted";
  std::vector<int> disabled;
  std::size_t max_len = 0;  // 0: unlimited

  void add_to(CLI::App* app) {
    app->add_option("--bound", bound, "upper bound family")->check(CLI::IsMember({"srau", "vsrau"}));
    app->add_option("--length-mode", length_mode, "vSRAU denominator terms")
        ->check(CLI::IsMember({"both", "rrs", "qsuf", "none"}));
    app->add_option("--mode", mode, "search mode")->check(CLI::IsMember({"targeted", "post-filter"}));
    app->add_option("--disable-strategy", disabled, "strategy to disable (repeatable)")
        ->check(CLI::Range(1, 6))
        ->allow_extra_args(false);
  }

  BoundConfig bound_config() const {
    BoundConfig b;
    b.variant = bound == "vsrau" ? BoundVariant::vSRAU_vTDAU : BoundVariant::SRAU_TDAU;
    if (length_mode == "rrs") b.length_mode = LengthMode::RrsOnly;
    else if (length_mode == "qsuf") b.length_mode = LengthMode::QsufOnly;
    else if (length_mode == "none") b.length_mode = LengthMode::None;
    return b;
  }

  MiningConfig config(const Rational& xi, const Pattern& target) const {
    MiningConfig c;
    c.xi = xi;
    c.target = target;
    c.bound = bound_config();
    for (int k : disabled) c.strategies[k - 1] = false;
    c.mode = mode == "post-filter" ? MiningMode::PostFilter : MiningMode::Targeted;
    if (max_len > 0) c.max_pattern_length = max_len;
    return c;
  }

  json echo() const {
    json j;
    j["bound"] = bound;
    j["length_mode"] = length_mode;
    j["mode"] = mode;
    std::vector<int> d = disabled;
    std::sort(d.begin(), d.end());
    j["disabled_strategies"] = d;
    j["max_len"] = max_len == 0 ? json(nullptr) : json(max_len);
    return j;
  }
};

Rational parse_xi(const std::string& s) {
  Rational xi;
  try {
    xi = Rational::parse(s);
  } catch (const std::exception& e) {
    throw Exit{2, "invalid --xi '" + s + "': " + e.what()};
  }
  if (xi < Rational(0) || xi > Rational(1)) throw Exit{2, "--xi must lie in [0,1]"};
  return xi;
}

QDatabase load_or_exit(const std::string& db, const std::string& utils) {
  try {
    return load_database(db, utils);
  } catch (const std::exception& e) {
    throw Exit{2, e.what()};
  }
}

std::vector<std::vector<std::uint64_t>> target_or_exit(const std::string& text) {
  try {
    return parse_target_labels(text);
  } catch (const std::exception& e) {
    throw Exit{2, "invalid --target: " + std::string(e.what())};
  }
}

json stats_json(const MiningStats& s, std::size_t patterns) {
  json j;
  j["candidates"] = s.candidates;
  json pr;
  for (int k = 0; k < 6; ++k) pr["s" + std::to_string(k + 1)] = s.pruned[k];
  j["pruned"] = pr;
  j["peak_rows"] = s.peak_rows;
  j["wall_ms"] = s.wall_ms;
  j["peak_rss_kb"] = peak_rss_kb();
  j["early_exit"] = s.early_exit;
  j["u_dt"] = s.u_dt;
  j["dt_size"] = s.dt_size;
  j["patterns"] = patterns;
  return j;
}

json patterns_json(const QDatabase& db, const std::vector<MinedPattern>& ps) {
  json arr = json::array();
  for (const auto& p : ps) {
    const Rational au = report_au(p, db.utable.scale());
    arr.push_back({{"pattern", format_pattern(db, p.pattern)},
                   {"au_fraction", au.fraction_string()},
                   {"au_decimal", au.decimal_string()}});
  }
  return arr;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Exit{2, "cannot write " + path};
  f << text;
}

// ---------------------------------------------------------------- mine

struct MineFlags {
  std::string db, utils, target, xi, out, stats;
  bool self_audit = false;
  EngineFlags engine;
};

int cmd_mine(const MineFlags& f, std::ostream& out) {
  const Rational xi = parse_xi(f.xi);
  const QDatabase db = load_or_exit(f.db, f.utils);
  const auto labels = target_or_exit(f.target);
  const auto target = map_target(db, labels);

  MiningResult res;
  int code = 0;
  if (!target) {
    res.stats.early_exit = true;
    code = 3;
  } else {
    MiningConfig cfg = f.engine.config(xi, *target);
    cfg.self_audit = f.self_audit;
    res = mine(db, cfg);
    if (res.stats.dt_size == 0) code = 3;
  }

  const std::string tsv = patterns_tsv(db, res.patterns);
  if (f.out.empty()) out << tsv;
  else write_file(f.out, tsv);

  if (!f.stats.empty()) {
    json j;
    j["schema_version"] = kSchemaVersion;
    json c = f.engine.echo();
    c["db"] = f.db;
    c["utils"] = f.utils;
    c["target"] = f.target;
    c["xi"] = xi.fraction_string();
    j["config"] = c;
    j["stats"] = stats_json(res.stats, res.patterns.size());
    j["patterns"] = patterns_json(db, res.patterns);
    write_file(f.stats, j.dump(2) + "\n");
  }
  return code;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
  std::string db, utils, target, xi;
  std::size_t seeds = 0;
  std::uint64_t seed_start = 1;
  std::size_t max_len = 8;
  std::uint64_t budget = 5'000'000;
  std::string repro_dir;
  bool inject_fault = false;
  EngineFlags engine;
};

struct Case {
  std::string label;  // seed or file name
  QDatabase db;
  Pattern target;
};

std::string utils_text(const QDatabase& db) { return write_utility_table(db); }

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<Case> cases;
  std::vector<Rational> xis;
  if (f.seeds > 0) {
    for (std::uint64_t s = f.seed_start; s < f.seed_start + f.seeds; ++s) {
      auto inst = random_instance(s);
      cases.push_back({"seed=" + std::to_string(s), std::move(inst.db), inst.target});
    }
    if (f.xi.empty()) xis = {Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(2, 5)};
    else xis = {parse_xi(f.xi)};
  } else {
    if (f.db.empty() || f.utils.empty() || f.target.empty() || f.xi.empty())
      throw Exit{2, "verify needs --db, --utils, --target and --xi, or --seeds"};
    QDatabase db = load_or_exit(f.db, f.utils);
    auto t = map_target(db, target_or_exit(f.target));
    xis = {parse_xi(f.xi)};
    if (!t) {
      out << "no sequence contains the target; nothing to verify\n";
      return 0;
    }
    cases.push_back({f.db, std::move(db), *t});
  }
  const bool vsrau = f.engine.bound == "vsrau";
  std::vector<ToggleCombo> combos;
  if (f.engine.disabled.empty()) {
    combos = toggle_combos();
  } else {
    MiningConfig c = f.engine.config(Rational(0), Pattern(std::vector<std::vector<ItemId>>{{0}}));
    combos.push_back({"custom", c.strategies});
  }

  out << "case\txi\tcombo\tkind\tpattern\tminer_au\toracle_au\n";
  std::size_t total = 0;
  for (const auto& cs : cases) {
    OracleUniverse uni;
    try {
      uni = oracle_enumerate(cs.db, cs.target, std::max(f.max_len, cs.target.length()), f.budget);
    } catch (const OracleBudgetExceeded& e) {
      err << cs.label << ": " << e.what() << "\n";
      return 4;
    }
    for (const auto& xi : xis) {
      const auto expected = oracle_select(uni, xi);
      for (const auto& combo : combos) {
        auto run = [&](const QDatabase& db) {
          MiningConfig cfg = f.engine.config(xi, cs.target);
          cfg.strategies = combo.strategies;
          cfg.max_pattern_length = std::max(f.max_len, cs.target.length());
          auto r = mine(db, cfg);
          if (f.inject_fault && !r.patterns.empty()) r.patterns.pop_back();
          return r;
        };
        const auto res = run(cs.db);
        const auto diffs = compare(res.patterns, expected);
        for (const auto& d : diffs) {
          out << cs.label << '\t' << xi.fraction_string() << '\t' << combo.name << '\t' << to_string(d.kind) << '\t'
              << format_pattern(cs.db, d.pattern) << '\t' << (d.miner_au ? d.miner_au->fraction_string() : "-") << '\t'
              << (d.oracle_au ? d.oracle_au->fraction_string() : "-") << '\n';
        }
        total += diffs.size();
        if (!diffs.empty() && vsrau) {
          // shrink to a minimal database that still diverges
          auto fails = [&](const QDatabase& db) {
            try {
              auto u = oracle_enumerate(db, cs.target, std::max(f.max_len, cs.target.length()), f.budget);
              return !compare(run(db).patterns, oracle_select(u, xi)).empty();
            } catch (const std::exception&) {
              return false;
            }
          };
          const QDatabase small = shrink_database(cs.db, fails);
          out << "# reproducer for " << cs.label << " xi=" << xi.fraction_string() << " combo=" << combo.name
              << " target=\"" << format_pattern(cs.db, cs.target) << "\"\n";
          std::istringstream lines(write_database(small));
          for (std::string line; std::getline(lines, line);) out << "#   db: " << line << '\n';
          std::istringstream ul(utils_text(small));
          for (std::string line; std::getline(ul, line);) out << "#   utils: " << line << '\n';
          if (!f.repro_dir.empty()) {
            const std::string stem = f.repro_dir + "/repro_" + std::to_string(total);
            write_file(stem + ".db", write_database(small));
            write_file(stem + ".utils", utils_text(small));
          }
        }
      }
    }
  }
  out << "# discrepancies: " << total << "\n";
  if (total == 0) return 0;
  return vsrau ? 5 : 1;
}

// ---------------------------------------------------------------- gen

struct GenFlags {
  GeneratorSpec spec;
  std::string plant;
  std::string out_db, out_utils;
};

GeneratorSpec resolve_spec(GeneratorSpec spec, const std::string& plant) {
  if (!plant.empty()) {
    const auto labels = target_or_exit(plant);
    std::vector<std::vector<ItemId>> sets;
    for (const auto& x : labels) {
      std::vector<ItemId> ids;
      for (auto l : x) {
        if (l < 1 || l > spec.num_items) throw Exit{2, "planted label outside 1..items"};
        ids.push_back(static_cast<ItemId>(l - 1));
      }
      std::sort(ids.begin(), ids.end());
      sets.push_back(ids);
    }
    spec.planted = Pattern(sets);
  }
  return spec;
}

QDatabase generate_or_exit(const GeneratorSpec& spec) {
  try {
    return generate(spec);
  } catch (const InfeasibleSpec& e) {
    throw Exit{2, std::string("infeasible spec: ") + e.what()};
  }
}

int cmd_gen(const GenFlags& f) {
  const QDatabase db = generate_or_exit(resolve_spec(f.spec, f.plant));
  write_file(f.out_db, write_database(db));
  write_file(f.out_utils, write_utility_table(db));
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  GeneratorSpec spec;
  std::string db, utils, target;
  std::vector<std::string> xi_grid{"0.05", "0.1", "0.2"};
  std::vector<std::size_t> target_lengths{1, 2, 3};
  std::size_t jobs = 1;
  std::string out;
  EngineFlags engine;
};

// A random target of `len` items over the generator's items, as dense ids.
Pattern random_target(std::uint64_t seed, std::size_t len, std::size_t num_items) {
  Rng rng(seed ^ (0xB5AD4ECEDA1CE2A9ULL * (len + 1)));
  std::vector<std::vector<ItemId>> sets;
  std::vector<ItemId> cur;
  for (std::size_t i = 0; i < len; ++i) {
    auto it = static_cast<ItemId>(rng.below(num_items));
    if (!cur.empty() && (rng.below(2) == 0 || std::find(cur.begin(), cur.end(), it) != cur.end())) {
      std::sort(cur.begin(), cur.end());
      sets.push_back(cur);
      cur.clear();
    }
    cur.push_back(it);
  }
  std::sort(cur.begin(), cur.end());
  sets.push_back(cur);
  return Pattern(sets);
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  struct Cell {
    std::size_t data;  // index into datasets
    Rational xi;
    std::string xi_text;
    std::string target_text;
    Pattern target;
    json row;
  };
  std::vector<QDatabase> datasets;
  std::vector<Cell> cells;
  std::vector<Rational> xis;
  for (const auto& s : f.xi_grid) xis.push_back(parse_xi(s));

  if (!f.db.empty()) {
    if (f.utils.empty() || f.target.empty()) throw Exit{2, "bench with --db needs --utils and --target"};
    datasets.push_back(load_or_exit(f.db, f.utils));
    auto t = map_target(datasets[0], target_or_exit(f.target));
    if (!t) throw Exit{3, "no sequence contains the target"};
    for (std::size_t k = 0; k < xis.size(); ++k) cells.push_back({0, xis[k], f.xi_grid[k], f.target, *t, {}});
  } else {
    for (auto len : f.target_lengths) {
      if (len == 0) throw Exit{2, "target lengths must be >= 1"};
      GeneratorSpec spec = f.spec;
      spec.planted = random_target(spec.seed, len, spec.num_items);
      if (spec.plant_probability == 0.0) spec.plant_probability = 0.5;
      datasets.push_back(generate_or_exit(spec));
      const auto& db = datasets.back();
      for (std::size_t k = 0; k < xis.size(); ++k)
        cells.push_back({datasets.size() - 1, xis[k], f.xi_grid[k], format_pattern(db, *spec.planted), *spec.planted, {}});
    }
  }

  auto run_cell = [&](Cell& c) {
    const auto& db = datasets[c.data];
    const MiningConfig cfg = f.engine.config(c.xi, c.target);
    const auto res = mine(db, cfg);
    json row;
    row["schema_version"] = kSchemaVersion;
    json conf = f.engine.echo();
    conf["sequences"] = db.sequences.size();
    conf["target"] = c.target_text;
    conf["target_length"] = c.target.length();
    conf["xi"] = c.xi_text;
    row["config"] = conf;
    row["stats"] = stats_json(res.stats, res.patterns.size());
    c.row = std::move(row);
  };
  const std::size_t jobs = std::max<std::size_t>(1, f.jobs);
  if (jobs == 1) {
    for (auto& c : cells) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < cells.size();) run_cell(cells[i]);
      });
    for (auto& t : pool) t.join();
  }
  std::ostringstream lines;
  for (const auto& c : cells) lines << c.row.dump() << '\n';
  if (f.out.empty()) out << lines.str();
  else write_file(f.out, lines.str());
  return 0;
}

void add_generator_options(CLI::App* app, GeneratorSpec& spec) {
  app->add_option("--seed", spec.seed, "generator seed");
  app->add_option("--sequences", spec.num_sequences, "number of sequences")->check(CLI::PositiveNumber);
  app->add_option("--items", spec.num_items, "number of distinct items")->check(CLI::PositiveNumber);
  app->add_option("--avg-seq", spec.avg_seq_size, "average itemsets per sequence")->check(CLI::PositiveNumber);
  app->add_option("--avg-set", spec.avg_set_size, "average items per itemset")->check(CLI::PositiveNumber);
  app->add_option("--qmax", spec.quantity_max, "maximum quantity")->check(CLI::PositiveNumber);
  app->add_option("--eumax", spec.eu_max, "maximum external utility")->check(CLI::PositiveNumber);
  app->add_option("--plant-prob", spec.plant_probability, "fraction of sequences receiving the planted target")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

Rational report_au(const MinedPattern& p, std::int64_t scale) {
  return Rational(p.utility, static_cast<std::int64_t>(p.pattern.length()) * scale);
}

std::string patterns_tsv(const QDatabase& db, const std::vector<MinedPattern>& patterns) {
  std::string s;
  for (const auto& p : patterns) {
    const Rational au = report_au(p, db.utable.scale());
    s += format_pattern(db, p.pattern);
    s += '\t';
    s += au.fraction_string();
    s += '\t';
    s += au.decimal_string();
    s += '\n';
  }
  return s;
}

std::int64_t peak_rss_kb() {
  std::ifstream f("/proc/self/status");
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream ss(line.substr(6));
      std::int64_t kb = 0;
      ss >> kb;
      return kb;
    }
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Targeted high average utility sequential pattern miner", "tausq"};
  app.require_subcommand(1);

  MineFlags mf;
  auto* mine_cmd = app.add_subcommand("mine", "mine targeted high average utility patterns");
  mine_cmd->add_option("--db", mf.db, "database file")->required();
  mine_cmd->add_option("--utils", mf.utils, "utility table file")->required();
  mine_cmd->add_option("--target", mf.target, "target query, e.g. \"2 4 -1 5\"")->required();
  mine_cmd->add_option("--xi", mf.xi, "threshold fraction in [0,1]")->required();
  mine_cmd->add_option("--out", mf.out, "pattern TSV (default stdout)");
  mine_cmd->add_option("--stats", mf.stats, "stats JSON file");
  mine_cmd->add_option("--max-len", mf.engine.max_len, "maximum pattern length");
  mine_cmd->add_flag("--self-audit", mf.self_audit, "recheck every emitted pattern from scratch");
  mf.engine.add_to(mine_cmd);

  VerifyFlags vf;
  auto* verify_cmd = app.add_subcommand("verify", "compare the miner against the brute-force oracle");
  verify_cmd->add_option("--db", vf.db, "database file");
  verify_cmd->add_option("--utils", vf.utils, "utility table file");
  verify_cmd->add_option("--target", vf.target, "target query");
  verify_cmd->add_option("--xi", vf.xi, "threshold fraction (seed mode default: 0.05,0.1,0.2,0.4)");
  verify_cmd->add_option("--seeds", vf.seeds, "number of random instances");
  verify_cmd->add_option("--seed-start", vf.seed_start, "first random seed");
  verify_cmd->add_option("--max-len", vf.max_len, "pattern length cap for both sides");
  verify_cmd->add_option("--budget", vf.budget, "oracle pattern budget");
  verify_cmd->add_option("--repro-dir", vf.repro_dir, "directory for shrunk reproducers");
  verify_cmd->add_flag("--inject-fault", vf.inject_fault, "drop one mined pattern (harness self-test)")->group("");
  vf.engine.add_to(verify_cmd);

  GenFlags gf;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic database");
  add_generator_options(gen_cmd, gf.spec);
  gen_cmd->add_option("--plant", gf.plant, "planted pattern in labels 1..items");
  gen_cmd->add_option("--out-db", gf.out_db, "database output")->required();
  gen_cmd->add_option("--out-utils", gf.out_utils, "utility table output")->required();

  BenchFlags bf;
  bf.spec.num_sequences = 1000;
  auto* bench_cmd = app.add_subcommand("bench", "run a grid of mining jobs and report one JSON line per cell");
  add_generator_options(bench_cmd, bf.spec);
  bench_cmd->add_option("--db", bf.db, "database file instead of generated data");
  bench_cmd->add_option("--utils", bf.utils, "utility table file");
  bench_cmd->add_option("--target", bf.target, "target query for --db");
  bench_cmd->add_option("--xi-grid", bf.xi_grid, "threshold fractions")->delimiter(',');
  bench_cmd->add_option("--target-lengths", bf.target_lengths, "planted target lengths")->delimiter(',');
  bench_cmd->add_option("--jobs", bf.jobs, "parallel cells");
  bench_cmd->add_option("--out", bf.out, "JSON lines output (default stdout)");
  bf.engine.add_to(bench_cmd);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mf, out);
    if (verify_cmd->parsed()) return cmd_verify(vf, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gf);
    if (bench_cmd->parsed()) return cmd_bench(bf, out);
  } catch (const Exit& e) {
    err << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace tausq
