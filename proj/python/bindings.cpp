#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lsreal/analysis.hpp"
#include "lsreal/errors.hpp"
#include "lsreal/hankel.hpp"
#include "lsreal/io.hpp"
#include "lsreal/realize.hpp"

namespace py = pybind11;
using namespace lsreal;

namespace {

Word to_word(const Alphabet& alphabet, const std::vector<std::string>& names) {
  return Word::from_names(alphabet, names);
}

// ("input", mode, j) with j 1-based, or ("state", tag).
SeriesIndex to_index(const Alphabet& alphabet, const py::tuple& t) {
  const auto kind = t[0].cast<std::string>();
  if (kind == "input" && t.size() == 3)
    return SeriesIndex::input(alphabet.index_of(t[1].cast<std::string>()), t[2].cast<int>() - 1);
  if (kind == "state" && t.size() == 2) return SeriesIndex::tag(t[1].cast<std::string>());
  throw py::value_error("index must be ('input', mode, j) or ('state', tag)");
}

py::tuple from_index(const Alphabet& alphabet, const SeriesIndex& j) {
  if (j.is_input()) return py::make_tuple("input", alphabet.name(j.as_input().mode), j.as_input().channel + 1);
  return py::make_tuple("state", j.as_tag());
}

RealizeOptions options(const std::string& rank_tol) {
  RealizeOptions opt;
  opt.rank_tol = RankTolerance::parse(rank_tol);
  return opt;
}

py::dict report_dict(const RankConditionReport& r) {
  py::dict d;
  d["N"] = r.N;
  d["rank_nn"] = r.r_nn;
  d["rank_n1n"] = r.r_n1n;
  d["rank_nn1"] = r.r_nn1;
  d["holds"] = r.holds;
  d["complete_hint"] = r.complete_hint;
  d["rank_largest"] = r.r_largest;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial realization of linear switched systems";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InsufficientOrder>(m, "InsufficientOrder", base.ptr());
  py::register_exception<NoUniqueSolution>(m, "NoUniqueSolution", base.ptr());
  py::register_exception<RankConditionFailed>(m, "RankConditionFailed", base.ptr());
  py::register_exception<ShiftInconsistent>(m, "ShiftInconsistent", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());

  py::class_<Realization>(m, "Realization")
      .def_static("from_json", [](const std::string& text) { return io::parse_system(io::Json::parse(text)); })
      .def_static("load", [](const std::string& path) { return io::parse_system(io::read_json_file(path)); })
      .def("to_json", [](const Realization& r) { return io::system_to_json(r).dump(); })
      .def_property_readonly("n", &Realization::n)
      .def_property_readonly("m", [](const Realization& r) { return r.sys().m(); })
      .def_property_readonly("p", [](const Realization& r) { return r.sys().p(); })
      .def_property_readonly("modes", [](const Realization& r) { return r.sys().alphabet().names(); })
      .def_property_readonly("tags", &Realization::tags)
      .def("A", [](const Realization& r, const std::string& q) { return r.sys().A(r.sys().alphabet().index_of(q)); })
      .def("B", [](const Realization& r, const std::string& q) { return r.sys().B(r.sys().alphabet().index_of(q)); })
      .def("C", [](const Realization& r, const std::string& q) { return r.sys().C(r.sys().alphabet().index_of(q)); })
      .def("initial_state", &Realization::initial_state, py::arg("tag"))
      .def("__repr__", [](const Realization& r) {
        return "<Realization n=" + std::to_string(r.n()) + " modes=" + std::to_string(r.sys().mode_count()) + ">";
      });

  py::class_<MarkovFamily>(m, "MarkovFamily")
      .def_static("from_json", [](const std::string& text) { return io::parse_markov(io::Json::parse(text)); })
      .def_static("load", [](const std::string& path) { return io::parse_markov(io::read_json_file(path)); })
      .def("to_json", [](const MarkovFamily& mk) { return io::markov_to_json(mk).dump(); })
      .def_property_readonly("max_order", &MarkovFamily::max_order)
      .def_property_readonly("modes", [](const MarkovFamily& mk) { return mk.alphabet().names(); })
      .def_property_readonly("index_set", [](const MarkovFamily& mk) {
        py::list out;
        for (const auto& j : mk.index_set()) out.append(from_index(mk.alphabet(), j));
        return out;
      })
      .def(
          "value",
          [](const MarkovFamily& mk, const py::tuple& index, const std::vector<std::string>& word,
             std::optional<std::string> output_mode) {
            const auto j = to_index(mk.alphabet(), index);
            const auto w = to_word(mk.alphabet(), word);
            const auto v = output_mode ? mk.markov(j, mk.alphabet().index_of(*output_mode), w) : mk.stacked(j, w);
            return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
          },
          py::arg("index"), py::arg("word"), py::arg("output_mode") = py::none());

  m.def("markov", &markov_from_lss, py::arg("realization"), py::arg("max_order"));

  m.def(
      "hankel", [](const MarkovFamily& mk, int L, int M) { return build_block(mk, L, M).data; },
      py::arg("markov"), py::arg("L"), py::arg("M"));

  m.def(
      "numerical_rank",
      [](const Eigen::MatrixXd& a, const std::string& tol) { return numerical_rank(a, RankTolerance::parse(tol)); },
      py::arg("matrix"), py::arg("rank_tol") = "default");

  m.def(
      "check_rank_condition",
      [](const MarkovFamily& mk, int N, const std::string& tol) {
        return report_dict(check_rank_condition(mk, N, RankTolerance::parse(tol)));
      },
      py::arg("markov"), py::arg("N"), py::arg("rank_tol") = "default");

  m.def(
      "realize",
      [](const MarkovFamily& mk, int N, const std::string& algorithm, const std::string& tol) {
        if (algorithm == "column") return realize_columns(mk, N, options(tol));
        if (algorithm == "factor") return realize_factor(mk, N, options(tol));
        throw py::value_error("algorithm must be 'column' or 'factor'");
      },
      py::arg("markov"), py::arg("N"), py::arg("algorithm") = "factor", py::arg("rank_tol") = "default");

  m.def(
      "minimal_realize",
      [](const MarkovFamily& mk, const std::string& tol) {
        auto res = minimal_realize(mk, options(tol));
        return py::make_tuple(res.realization, report_dict(res.report));
      },
      py::arg("markov"), py::arg("rank_tol") = "default");

  m.def(
      "reduce", [](const Realization& r, int N, const std::string& tol) { return reduce(r, N, options(tol)); },
      py::arg("realization"), py::arg("N"), py::arg("rank_tol") = "default");

  m.def(
      "certify_minimal",
      [](const Realization& r) {
        const auto c = certify_minimal(r);
        py::dict d;
        d["dim"] = c.dim;
        d["reach_dim"] = c.reach_dim;
        d["obs_kernel_dim"] = c.obs_kernel_dim;
        d["is_minimal"] = c.is_minimal;
        return d;
      },
      py::arg("realization"));

  m.def(
      "find_isomorphism",
      [](const Realization& a, const Realization& b, double tol) {
        auto res = find_isomorphism(a, b, tol);
        return py::make_tuple(res.S ? py::cast(*res.S) : py::none(), res.residual, res.reason);
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = 1e-8);

  m.def(
      "match_order",
      [](const MarkovFamily& mk, const Realization& r, std::optional<int> order, double tol) {
        return markov_match_order(mk, r, order.value_or(mk.max_order()), tol);
      },
      py::arg("markov"), py::arg("realization"), py::arg("order") = py::none(), py::arg("tol") = 1e-8,
      "First word length where the parameters differ, or None.");

  m.def(
      "simulate",
      [](const Realization& r, const std::vector<std::pair<std::string, double>>& switching,
         std::optional<std::string> tag, std::optional<Eigen::VectorXd> input) {
        SwitchingSequence w;
        for (const auto& [q, t] : switching) w.steps.push_back({r.sys().alphabet().index_of(q), t});
        const Eigen::VectorXd u = input.value_or(Eigen::VectorXd::Zero(r.sys().m()));
        const auto pc = PiecewiseConstantInput::constant(u, w.total_duration());
        const Eigen::VectorXd x0 = tag ? r.initial_state(*tag) : Eigen::VectorXd::Zero(r.n());
        return simulate_from_state(r.sys(), x0, pc, w).y;
      },
      py::arg("realization"), py::arg("switching"), py::arg("tag") = py::none(), py::arg("input") = py::none());
}
