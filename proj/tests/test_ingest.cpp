#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "tausq/ingest.hpp"

using namespace tausq;
using namespace fx;

namespace {
std::vector<RawSequence> parse(const std::string& s) {
  std::istringstream in(s);
  return parse_database(in);
}
}  // namespace

TEST_CASE("parse one sequence") {
  const auto raw = parse("2[4] 4[1] -1 2[2] 3[1] 4[4] -1 1[1] 5[2] 9[1] -2\n");
  REQUIRE(raw.size() == 1);
  REQUIRE(raw[0].itemsets.size() == 3);
  CHECK(raw[0].itemsets[1].size() == 3);
  CHECK(raw[0].itemsets[2][2] == std::pair<std::uint64_t, Quantity>{9, 1});
}

TEST_CASE("SUtility suffix and blank lines are ignored") {
  const auto a1 = parse("2[4] 4[1] -1 1[1] -2 SUtility:52\n\n");
  const auto a2 = parse("2[4] 4[1] -1 1[1] -2\n");
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].itemsets == a2[0].itemsets);
  CHECK(parse("\n\n").empty());
}

TEST_CASE("parse errors carry the line number") {
  CHECK_THROWS_AS(parse("1[0] -2\n"), ParseError);
  CHECK_THROWS_AS(parse("1[1] 1[2] -2\n"), ParseError);
  CHECK_THROWS_AS(parse("1[x] -2\n"), ParseError);
  try {
    parse("1[1] -2\n\nfoo -2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("utility table with decimal profits is scaled") {
  std::istringstream in("1:2.5\n2:3\n");
  const auto t = parse_utility_table(in);
  CHECK(t.scale == 10);
  CHECK(t.profit.at(1) == 25);
  CHECK(t.profit.at(2) == 30);
}

TEST_CASE("bind remaps labels densely and recomputes utility") {
  const auto& db = running_example();
  CHECK(db.num_items() == 9);
  CHECK(db.labels.front() == 1);
  CHECK(db.id_of(5) == e);
  CHECK_FALSE(db.id_of(42).has_value());
  CHECK(sequence_utility(db.sequences[0], db.utable) == 52);

  std::istringstream tin("1:1\n");
  const auto table = parse_utility_table(tin);
  CHECK_THROWS_AS(tausq::bind(parse("1[1] 2[1] -2\n"), table), std::invalid_argument);
}

TEST_CASE("write then read round trip") {
  const auto& db = running_example();
  std::istringstream in(write_database(db));
  std::istringstream uin(write_utility_table(db));
  const auto again = tausq::bind(parse_database(in), parse_utility_table(uin));
  CHECK(again.sequences == db.sequences);
  CHECK(again.utable == db.utable);
}

TEST_CASE("target parsing and mapping") {
  const auto& db = running_example();
  const auto labels = parse_target_labels("4 3 -1 5");
  const auto t = map_target(db, labels);
  REQUIRE(t.has_value());
  CHECK(*t == P({{c, d}, {e}}));
  CHECK(format_pattern(db, *t) == "3 4 -1 5");
  CHECK_FALSE(map_target(db, parse_target_labels("42")).has_value());
}

TEST_CASE("generator is deterministic and plants the target") {
  GeneratorSpec g;
  g.seed = 11;
  g.num_sequences = 200;
  g.num_items = 8;
  g.planted = P({{1}, {3}});
  g.plant_probability = 1.0;
  const auto d1 = generate(g);
  const auto d2 = generate(g);
  CHECK(d1.sequences == d2.sequences);
  CHECK(d1.sequences.size() == 200);
  CHECK_NOTHROW(d1.validate());
  const auto t = map_target(d1, {{2}, {4}});
  REQUIRE(t.has_value());
  for (const auto& qs : d1.sequences) CHECK(contains(*t, qs));
  g.seed = 12;
  CHECK_FALSE(generate(g).sequences == d1.sequences);
}
