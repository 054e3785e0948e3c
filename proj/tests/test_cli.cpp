#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "tausq/cli.hpp"

using namespace tausq;
using namespace fx;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "tausq_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("mine prints the running example patterns") {
  const auto r = run({"mine", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "4 -1 5", "--xi",
                      "0.1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 4 -1 5\t135/3\t45") != std::string::npos);
}

TEST_CASE("mine writes stats json") {
  const auto stats = tmp("stats.json");
  const auto out = tmp("out.tsv");
  const auto r = run({"mine", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "4 -1 5", "--xi",
                      "0.1", "--stats", stats.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(stats);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["schema_version"] == 1);
  CHECK(j["stats"]["u_dt"] == 333);
  CHECK(j["stats"]["dt_size"] == 4);
  CHECK(j["patterns"].size() == 5);
  CHECK(std::filesystem::file_size(out) > 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"mine", "--db", path("table1.txt")}).code == 2);
  CHECK(run({"mine", "--db", path("nope.txt"), "--utils", path("table2.txt"), "--target", "4", "--xi", "0.1"}).code ==
        2);
  CHECK(run({"mine", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "4", "--xi", "abc"}).code ==
        2);
  // no sequence contains <{h},{h}>
  CHECK(run({"mine", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "8 -1 8", "--xi", "0.1"})
            .code == 3);
  // threshold early exit is a normal, empty result
  const auto one = run({"mine", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "4 -1 5",
                        "--xi", "1.0"});
  CHECK(one.code == 0);
  CHECK(one.out.empty());
}

TEST_CASE("verify on the running example and on seeds") {
  const auto r = run({"verify", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "4 -1 5",
                      "--xi", "0.1", "--max-len", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# discrepancies: 0") != std::string::npos);
  CHECK(run({"verify", "--seeds", "5"}).code == 0);
  CHECK(run({"verify", "--seeds", "3", "--bound", "vsrau"}).code == 0);
  const auto tight = run({"verify", "--seeds", "1", "--budget", "5"});
  CHECK(tight.code == 4);
}

TEST_CASE("verify catches an injected fault") {
  const auto r = run({"verify", "--db", path("table1.txt"), "--utils", path("table2.txt"), "--target", "4 -1 5",
                      "--xi", "0.1", "--inject-fault"});
  CHECK(r.code == 1);
  CHECK(r.out.find("missing") != std::string::npos);
}

TEST_CASE("gen then mine") {
  const auto db = tmp("gen.txt"), ut = tmp("gen_utils.txt");
  CHECK(run({"gen", "--seed", "5", "--sequences", "50", "--items", "6", "--plant", "1 -1 2", "--plant-prob", "0.7",
             "--out-db", db.string(), "--out-utils", ut.string()})
            .code == 0);
  const auto r = run({"mine", "--db", db.string(), "--utils", ut.string(), "--target", "1 -1 2", "--xi", "0.05"});
  CHECK(r.code == 0);
}

TEST_CASE("bench emits one json line per cell") {
  const auto r = run({"bench", "--sequences", "200", "--items", "8", "--xi-grid", "0.05,0.1", "--target-lengths", "1,2",
                      "--jobs", "2"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  int n = 0;
  for (std::string l; std::getline(lines, l);) {
    if (l.empty()) continue;
    const auto j = nlohmann::json::parse(l);
    CHECK(j["stats"].contains("candidates"));
    ++n;
  }
  CHECK(n == 4);
}

TEST_CASE("report_au divides out the scale") {
  MinedPattern p{P({{a}, {b}}), 90, Rational(90, 2)};
  CHECK(report_au(p, 10) == Rational(45, 10));
}
