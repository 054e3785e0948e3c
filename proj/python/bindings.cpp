#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tausq/cli.hpp"
#include "tausq/ingest.hpp"
#include "tausq/miner.hpp"
#include "tausq/oracle.hpp"

namespace py = pybind11;
using namespace tausq;

namespace {

Pattern target_of(const QDatabase& db, const std::string& text) {
  auto t = map_target(db, parse_target_labels(text));
  if (!t) throw py::value_error("target item not present in the database: " + text);
  return *t;
}

py::tuple frac(const Rational& r) { return py::make_tuple(r.num(), r.den()); }

BoundConfig bound_of(const std::string& bound, const std::string& length_mode) {
  BoundConfig b;
  if (bound == "srau") b.variant = BoundVariant::SRAU_TDAU;
  else if (bound == "vsrau") b.variant = BoundVariant::vSRAU_vTDAU;
  else throw py::value_error("bound must be 'srau' or 'vsrau'");
  if (length_mode == "both") b.length_mode = LengthMode::Both;
  else if (length_mode == "rrs") b.length_mode = LengthMode::RrsOnly;
  else if (length_mode == "qsuf") b.length_mode = LengthMode::QsufOnly;
  else if (length_mode == "none") b.length_mode = LengthMode::None;
  else throw py::value_error("length_mode must be one of both, rrs, qsuf, none");
  return b;
}

py::dict stats_dict(const MiningStats& s) {
  py::dict d;
  d["candidates"] = s.candidates;
  py::dict pruned;
  for (int k = 0; k < 6; ++k) pruned[("s" + std::to_string(k + 1)).c_str()] = s.pruned[static_cast<std::size_t>(k)];
  d["pruned"] = pruned;
  d["peak_rows"] = s.peak_rows;
  d["wall_ms"] = s.wall_ms;
  d["early_exit"] = s.early_exit;
  d["u_dt"] = s.u_dt;
  d["dt_size"] = s.dt_size;
  return d;
}

py::dict mine_py(const QDatabase& db, const std::string& target, const std::string& xi, const std::string& bound,
                 const std::string& length_mode, const std::string& mode, const std::vector<int>& disabled,
                 std::optional<std::size_t> max_len) {
  MiningConfig cfg;
  cfg.target = target_of(db, target);
  cfg.xi = Rational::parse(xi);
  cfg.bound = bound_of(bound, length_mode);
  for (int k : disabled) {
    if (k < 1 || k > 6) throw py::value_error("strategies are numbered 1..6");
    cfg.strategies[static_cast<std::size_t>(k - 1)] = false;
  }
  if (mode == "post-filter") cfg.mode = MiningMode::PostFilter;
  else if (mode != "targeted") throw py::value_error("mode must be 'targeted' or 'post-filter'");
  cfg.max_pattern_length = max_len;
  MiningResult res;
  {
    py::gil_scoped_release release;
    res = mine(db, cfg);
  }
  py::list pats;
  for (const auto& p : res.patterns)
    pats.append(py::make_tuple(format_pattern(db, p.pattern), p.utility, frac(report_au(p, db.utable.scale()))));
  py::dict out;
  out["patterns"] = pats;
  out["stats"] = stats_dict(res.stats);
  return out;
}

py::list verify_py(const QDatabase& db, const std::string& target, const std::string& xi, std::size_t max_len,
                   const std::string& bound) {
  MiningConfig cfg;
  cfg.target = target_of(db, target);
  cfg.xi = Rational::parse(xi);
  cfg.bound = bound_of(bound, "both");
  cfg.max_pattern_length = max_len;
  OracleConfig oc;
  oc.target = cfg.target;
  oc.xi = cfg.xi;
  oc.max_pattern_length = max_len;
  std::vector<Discrepancy> diff;
  {
    py::gil_scoped_release release;
    diff = compare(mine(db, cfg).patterns, oracle_mine(db, oc));
  }
  py::list out;
  for (const auto& x : diff) {
    py::object m = x.miner_au ? py::object(frac(*x.miner_au)) : py::none();
    py::object o = x.oracle_au ? py::object(frac(*x.oracle_au)) : py::none();
    out.append(py::make_tuple(to_string(x.kind), format_pattern(db, x.pattern), m, o));
  }
  return out;
}

QDatabase from_text(const std::string& db_text, const std::string& utils_text) {
  std::istringstream d(db_text), u(utils_text);
  return tausq::bind(parse_database(d), parse_utility_table(u));
}

}  // namespace

PYBIND11_MODULE(_tausq, m) {
  m.doc() = "Targeted high average utility sequential pattern mining";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<OracleBudgetExceeded>(m, "OracleBudgetExceeded", PyExc_RuntimeError);

  py::class_<QDatabase>(m, "Database")
      .def_property_readonly("num_sequences", [](const QDatabase& db) { return db.sequences.size(); })
      .def_property_readonly("num_items", &QDatabase::num_items)
      .def_property_readonly("labels", [](const QDatabase& db) { return db.labels; })
      .def("to_text", [](const QDatabase& db) { return py::make_tuple(write_database(db), write_utility_table(db)); },
           "Database and utility table in the text format.")
      .def("__len__", [](const QDatabase& db) { return db.sequences.size(); });

  m.def("load_database", &load_database, py::arg("db_path"), py::arg("utils_path"));
  m.def("database_from_text", &from_text, py::arg("db_text"), py::arg("utils_text"));
  m.def(
      "generate",
      [](std::uint64_t seed, std::size_t sequences, std::size_t items, std::size_t avg_seq, std::size_t avg_set,
         Quantity qmax, Utility eumax, std::optional<std::string> plant, double plant_prob) {
        GeneratorSpec g;
        g.seed = seed;
        g.num_sequences = sequences;
        g.num_items = items;
        g.avg_seq_size = avg_seq;
        g.avg_set_size = avg_set;
        g.quantity_max = qmax;
        g.eu_max = eumax;
        if (plant) {
          std::vector<std::vector<ItemId>> sets;
          for (const auto& s : parse_target_labels(*plant)) {
            std::vector<ItemId> ids;
            for (auto l : s) {
              if (l < 1 || l > items) throw py::value_error("planted labels must lie in 1..items");
              ids.push_back(static_cast<ItemId>(l - 1));
            }
            std::sort(ids.begin(), ids.end());
            sets.push_back(ids);
          }
          g.planted = Pattern(sets);
        }
        g.plant_probability = plant_prob;
        return generate(g);
      },
      py::arg("seed") = 1, py::arg("sequences") = 100, py::arg("items") = 10, py::arg("avg_seq") = 3,
      py::arg("avg_set") = 2, py::arg("qmax") = 5, py::arg("eumax") = 10, py::arg("plant") = py::none(),
      py::arg("plant_prob") = 0.0);
  m.def("mine", &mine_py, py::arg("db"), py::arg("target"), py::arg("xi"), py::arg("bound") = "srau",
        py::arg("length_mode") = "both", py::arg("mode") = "targeted",
        py::arg("disabled_strategies") = std::vector<int>{}, py::arg("max_len") = py::none());
  m.def("verify", &verify_py, py::arg("db"), py::arg("target"), py::arg("xi"), py::arg("max_len") = 8,
        py::arg("bound") = "srau");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
