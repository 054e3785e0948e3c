#include "tausq/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "tausq/rng.hpp"

namespace tausq {

namespace {

constexpr std::int64_t kValueCap = std::numeric_limits<std::int32_t>::max();

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool parse_u64(std::string_view s, std::uint64_t& v) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_i64(std::string_view s, std::int64_t& v) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<RawSequence> parse_database(std::istream& in) {
  std::vector<RawSequence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0][0] == '#' || toks[0][0] == '%' || toks[0][0] == '@') continue;
    RawSequence seq;
    seq.line = lineno;
    std::vector<std::pair<std::uint64_t, Quantity>> cur;
    bool terminated = false;
    for (const auto& tok : toks) {
      if (terminated) {
        if (tok.rfind("SUtility:", 0) == 0) continue;
        throw ParseError("unexpected token after -2: '" + tok + "'", lineno);
      }
      if (tok == "-1") {
        if (cur.empty()) throw ParseError("empty itemset", lineno);
        seq.itemsets.push_back(std::move(cur));
        cur.clear();
        continue;
      }
      if (tok == "-2") {
        if (!cur.empty()) {
          seq.itemsets.push_back(std::move(cur));
          cur.clear();
        }
        terminated = true;
        continue;
      }
      if (tok.rfind("SUtility:", 0) == 0) throw ParseError("SUtility before -2", lineno);
      auto lb = tok.find('[');
      if (lb == std::string::npos || tok.back() != ']')
        throw ParseError("malformed q-item '" + tok + "'", lineno);
      std::uint64_t label = 0;
      std::int64_t qty = 0;
      if (!parse_u64(std::string_view(tok).substr(0, lb), label))
        throw ParseError("malformed item label in '" + tok + "'", lineno);
      if (!parse_i64(std::string_view(tok).substr(lb + 1, tok.size() - lb - 2), qty))
        throw ParseError("malformed quantity in '" + tok + "'", lineno);
      if (qty <= 0) throw ParseError("quantity must be positive in '" + tok + "'", lineno);
      if (qty > kValueCap) throw ParseError("quantity exceeds 2^31-1 in '" + tok + "'", lineno);
      for (const auto& [l, q] : cur)
        if (l == label) throw ParseError("duplicate item " + std::to_string(label) + " in itemset", lineno);
      cur.emplace_back(label, qty);
    }
    if (!terminated) throw ParseError("missing -2 terminator", lineno);
    if (seq.itemsets.empty()) throw ParseError("sequence has no itemsets", lineno);
    for (auto& y : seq.itemsets) std::sort(y.begin(), y.end());
    out.push_back(std::move(seq));
  }
  return out;
}

RawUtilityTable parse_utility_table(std::istream& in) {
  struct Entry {
    std::uint64_t label;
    std::int64_t whole;
    std::string frac;
    std::size_t line;
  };
  std::vector<Entry> entries;
  std::set<std::uint64_t> seen;
  std::size_t max_frac = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("expected item:profit", lineno);
    std::uint64_t label = 0;
    if (!parse_u64(trim(t.substr(0, colon)), label)) throw ParseError("malformed item label", lineno);
    std::string val = trim(t.substr(colon + 1));
    if (!val.empty() && val[0] == '-') throw ParseError("negative profit for item " + std::to_string(label), lineno);
    std::string whole = val, frac;
    if (auto dot = val.find('.'); dot != std::string::npos) {
      whole = val.substr(0, dot);
      frac = val.substr(dot + 1);
      if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError("malformed profit '" + val + "'", lineno);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
    }
    std::int64_t w = 0;
    if (whole.empty() && !frac.empty()) whole = "0";
    if (!parse_i64(whole, w)) throw ParseError("malformed profit '" + val + "'", lineno);
    if (w > kValueCap) throw ParseError("profit exceeds 2^31-1", lineno);
    if (!seen.insert(label).second) throw ParseError("duplicate item " + std::to_string(label), lineno);
    max_frac = std::max(max_frac, frac.size());
    entries.push_back({label, w, frac, lineno});
  }
  if (max_frac > 9) throw ParseError("profits support at most 9 fractional digits", 0);
  RawUtilityTable table;
  for (std::size_t i = 0; i < max_frac; ++i) table.scale *= 10;
  for (const auto& e : entries) {
    std::int64_t frac = 0;
    std::string padded = e.frac + std::string(max_frac - e.frac.size(), '0');
    if (!padded.empty()) parse_i64(padded, frac);
    table.profit[e.label] = e.whole * table.scale + frac;
  }
  return table;
}

QDatabase bind(const std::vector<RawSequence>& raw, const RawUtilityTable& table) {
  std::set<std::uint64_t> used;
  for (const auto& s : raw)
    for (const auto& y : s.itemsets)
      for (const auto& [label, q] : y) used.insert(label);
  QDatabase db;
  db.labels.assign(used.begin(), used.end());
  std::vector<Utility> eu;
  eu.reserve(db.labels.size());
  for (auto label : db.labels) {
    auto it = table.profit.find(label);
    if (it == table.profit.end())
      throw std::invalid_argument("item " + std::to_string(label) + " has no entry in the utility table");
    eu.push_back(it->second);
  }
  db.utable = UtilityTable(std::move(eu), table.scale);
  std::uint64_t sid = 1;
  for (const auto& s : raw) {
    QSequence qs;
    qs.sid = sid++;
    for (const auto& y : s.itemsets) {
      QItemset set;
      for (const auto& [label, q] : y) set.items.push_back({*db.id_of(label), q});
      qs.itemsets.push_back(std::move(set));
    }
    db.sequences.push_back(std::move(qs));
  }
  return db;
}

QDatabase load_database(const std::string& db_path, const std::string& utils_path) {
  std::ifstream din(db_path);
  if (!din) throw std::runtime_error("cannot open database file " + db_path);
  std::ifstream uin(utils_path);
  if (!uin) throw std::runtime_error("cannot open utility file " + utils_path);
  auto raw = parse_database(din);
  auto table = parse_utility_table(uin);
  return tausq::bind(raw, table);
}

std::string write_database(const QDatabase& db) {
  std::string out;
  for (const auto& qs : db.sequences) {
    bool first_set = true;
    for (const auto& y : qs.itemsets) {
      if (!first_set) out += " -1 ";
      first_set = false;
      bool first = true;
      for (const auto& q : y.items) {
        if (!first) out += ' ';
        first = false;
        out += std::to_string(db.labels[q.item]) + "[" + std::to_string(q.quantity) + "]";
      }
    }
    out += " -2\n";
  }
  return out;
}

std::string write_utility_table(const QDatabase& db) {
  std::string out;
  const auto scale = db.utable.scale();
  for (ItemId i = 0; i < db.labels.size(); ++i) {
    out += std::to_string(db.labels[i]) + ":";
    if (scale == 1) {
      out += std::to_string(db.utable.eu(i));
    } else {
      out += Rational(db.utable.eu(i), scale).decimal_string(12);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> parse_target_labels(const std::string& text) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur;
  for (const auto& tok : split_ws(text)) {
    if (tok == "-1") {
      if (cur.empty()) throw std::invalid_argument("empty itemset in target '" + text + "'");
      out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    std::uint64_t label = 0;
    if (!parse_u64(tok, label)) throw std::invalid_argument("malformed target item '" + tok + "'");
    cur.push_back(label);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  if (out.empty()) throw std::invalid_argument("target must be nonempty");
  for (auto& x : out) {
    std::sort(x.begin(), x.end());
    if (std::adjacent_find(x.begin(), x.end()) != x.end())
      throw std::invalid_argument("duplicate item in target itemset");
  }
  return out;
}

std::optional<Pattern> map_target(const QDatabase& db, const std::vector<std::vector<std::uint64_t>>& labels) {
  std::vector<std::vector<ItemId>> sets;
  for (const auto& x : labels) {
    std::vector<ItemId> ids;
    for (auto l : x) {
      auto id = db.id_of(l);
      if (!id) return std::nullopt;
      ids.push_back(*id);
    }
    sets.push_back(std::move(ids));
  }
  return Pattern(std::move(sets));
}

std::string format_pattern(const QDatabase& db, const Pattern& p) {
  std::string out;
  bool first_set = true;
  for (const auto& x : p.itemsets()) {
    if (!first_set) out += " -1 ";
    first_set = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(x[k] < db.labels.size() ? db.labels[x[k]] : x[k]);
    }
  }
  return out;
}

QDatabase generate(const GeneratorSpec& spec) {
  if (spec.num_sequences < 1 || spec.num_items < 1 || spec.avg_seq_size < 1 || spec.avg_set_size < 1 ||
      spec.quantity_max < 1 || spec.eu_max < 1)
    throw InfeasibleSpec("generator counts must be >= 1");
  if (spec.avg_set_size > spec.num_items) throw InfeasibleSpec("avg_set_size exceeds num_items");
  if (!(spec.plant_probability >= 0.0 && spec.plant_probability <= 1.0))
    throw InfeasibleSpec("plant probability must lie in [0,1]");
  if (spec.planted) {
    for (const auto& x : spec.planted->itemsets())
      for (ItemId i : x)
        if (i >= spec.num_items) throw InfeasibleSpec("planted item outside the item range");
  }

  Rng rng(spec.seed);
  QDatabase db;
  db.labels.resize(spec.num_items);
  std::vector<Utility> eu(spec.num_items);
  for (std::size_t i = 0; i < spec.num_items; ++i) {
    db.labels[i] = i + 1;
    eu[i] = rng.range(1, spec.eu_max);
  }
  db.utable = UtilityTable(std::move(eu));

  const auto max_seq = static_cast<std::int64_t>(2 * spec.avg_seq_size - 1);
  const auto max_set = static_cast<std::int64_t>(std::min(spec.num_items, 2 * spec.avg_set_size - 1));
  std::vector<ItemId> pool(spec.num_items);
  for (std::size_t n = 0; n < spec.num_sequences; ++n) {
    QSequence qs;
    qs.sid = n + 1;
    auto nsets = rng.range(1, max_seq);
    for (std::int64_t s = 0; s < nsets; ++s) {
      auto k = static_cast<std::size_t>(rng.range(1, max_set));
      for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<ItemId>(i);
      for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      std::vector<ItemId> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(chosen.begin(), chosen.end());
      QItemset y;
      for (ItemId i : chosen) y.items.push_back({i, rng.range(1, spec.quantity_max)});
      qs.itemsets.push_back(std::move(y));
    }
    db.sequences.push_back(std::move(qs));
  }

  if (spec.planted && spec.plant_probability > 0.0) {
    const auto& t = *spec.planted;
    auto count = static_cast<std::size_t>(std::ceil(spec.plant_probability * static_cast<double>(spec.num_sequences) - 1e-9));
    count = std::min(count, spec.num_sequences);
    std::vector<std::size_t> order(spec.num_sequences);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + rng.below(order.size() - i)]);
    for (std::size_t c = 0; c < count; ++c) {
      auto& qs = db.sequences[order[c]];
      while (qs.itemsets.size() < t.size()) {
        QItemset y;
        auto i = static_cast<ItemId>(rng.below(spec.num_items));
        y.items.push_back({i, rng.range(1, spec.quantity_max)});
        qs.itemsets.push_back(std::move(y));
      }
      // distinct sorted itemset positions for the target itemsets
      std::vector<std::size_t> pos(qs.itemsets.size());
      for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
      for (std::size_t i = 0; i < t.size(); ++i) std::swap(pos[i], pos[i + rng.below(pos.size() - i)]);
      pos.resize(t.size());
      std::sort(pos.begin(), pos.end());
      for (std::size_t v = 0; v < t.size(); ++v) {
        auto& y = qs.itemsets[pos[v]];
        const auto& x = t.itemsets()[v];
        std::size_t target_size = std::max(x.size(), y.items.size());
        std::vector<QItem> merged;
        for (ItemId i : x) {
          const QItem* old = y.find(i);
          merged.push_back(old ? *old : QItem{i, rng.range(1, spec.quantity_max)});
        }
        for (const auto& q : y.items) {
          if (merged.size() >= target_size) break;
          if (!std::binary_search(x.begin(), x.end(), q.item)) merged.push_back(q);
        }
        std::sort(merged.begin(), merged.end(), [](const QItem& a, const QItem& b) { return a.item < b.item; });
        y.items = std::move(merged);
      }
    }
  }
  return db;
}

}  // namespace tausq
