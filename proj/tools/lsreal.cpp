// lsreal: command-line front end for the realization library.
//
// Exit codes: 0 success or equivalent, 1 inequivalent, 2 input error,
// 3 the algorithm found no realization.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lsreal/analysis.hpp"
#include "lsreal/errors.hpp"
#include "lsreal/hankel.hpp"
#include "lsreal/io.hpp"
#include "lsreal/realize.hpp"

using namespace lsreal;
using io::Json;

namespace {

constexpr int kInequivalent = 1;
constexpr int kInputError = 2;
constexpr int kDeclined = 3;

RankTolerance rank_tol_from(const std::string& flag) {
  if (!flag.empty()) return RankTolerance::parse(flag);
  if (const char* env = std::getenv("LSREAL_RANK_TOL")) return RankTolerance::parse(env);
  return {};
}

void print_report(std::ostream& os, const RankConditionReport& rep) {
  os << "N = " << rep.N << "\n"
     << "rank H(N,N)   = " << rep.r_nn << "\n"
     << "rank H(N+1,N) = " << rep.r_n1n << "\n"
     << "rank H(N,N+1) = " << rep.r_nn1 << "\n"
     << "rank condition " << (rep.holds ? "holds" : "fails") << "\n";
  if (!rep.complete_hint)
    os << "warning: largest available Hankel block has rank " << rep.r_largest
       << "; the result is a partial realization and completeness is unverified\n";
}

void print_certificate(std::ostream& os, const std::string& label, const MinimalityCertificate& c) {
  os << label << ": dim " << c.dim << ", reachable " << c.reach_dim << ", unobservable "
     << c.obs_kernel_dim;
  if (c.hankel_rank) os << ", Hankel rank " << *c.hankel_rank;
  os << (c.is_minimal ? ", minimal" : ", not minimal") << "\n";
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + item + "'");
    }
  }
  return out;
}

// "q1:1,q2:0.5"
SwitchingSequence parse_switching(const std::string& text, const Alphabet& alphabet) {
  SwitchingSequence w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("switching step '" + item + "' needs mode:time");
    const auto mode = alphabet.find(item.substr(0, colon));
    if (!mode) throw ParseError("unknown mode '" + item.substr(0, colon) + "'");
    const auto t = parse_numbers(item.substr(colon + 1));
    if (t.size() != 1 || t[0] < 0) throw ParseError("bad dwell time in '" + item + "'");
    w.steps.push_back({*mode, t[0]});
  }
  if (w.steps.empty()) throw ParseError("empty switching sequence");
  return w;
}

PiecewiseConstantInput parse_input(const Json& doc, Eigen::Index m) {
  PiecewiseConstantInput u;
  try {
    u.breakpoints = doc.at("breakpoints").get<std::vector<double>>();
    for (const auto& v : doc.at("values")) {
      const auto row = v.get<std::vector<double>>();
      u.values.push_back(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size())));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("input file: ") + e.what());
  }
  u.validate(m);
  return u;
}

SwitchingSequence truncate(const SwitchingSequence& w, double t) {
  SwitchingSequence out;
  double elapsed = 0.0;
  for (const auto& s : w.steps) {
    const double d = std::min(s.duration, t - elapsed);
    out.steps.push_back({s.mode, std::max(d, 0.0)});
    elapsed += s.duration;
    if (elapsed >= t) break;
  }
  return out;
}

int cmd_markov(const std::string& in, int max_order, const std::string& out) {
  const auto r = io::parse_system(io::read_json_file(in));
  io::write_json_file(out, io::markov_to_json(markov_from_lss(r, max_order)));
  return 0;
}

int cmd_hankel(const std::string& in, int L, int M, const std::string& tol, const std::string& out) {
  const auto mk = io::parse_markov(io::read_json_file(in));
  const auto h = build_block(mk, L, M);
  const auto rank = numerical_rank(h.data, rank_tol_from(tol));
  Json rows = Json::array(), cols = Json::array();
  for (std::size_t i = 0; i < h.row_ix.size(); ++i) {
    const auto [v, k] = h.row_ix.at(i);
    rows.push_back({{"word", v.to_string(mk.alphabet())}, {"component", k + 1}});
  }
  for (std::size_t i = 0; i < h.col_ix.size(); ++i) {
    const auto [w, j] = h.col_ix.at(i);
    cols.push_back({{"word", w.to_string(mk.alphabet())}, {"index", j.to_string(mk.alphabet())}});
  }
  io::write_json_file(out, {{"L", L}, {"M", M}, {"rank", rank}, {"rows", rows}, {"cols", cols},
                            {"data", io::matrix_to_json(h.data)}});
  if (!out.empty() && out != "-") std::cout << "rank " << rank << "\n";
  return 0;
}

int cmd_realize(const std::string& in, int N, const std::string& algorithm, const std::string& tol,
                const std::string& out) {
  const auto mk = io::parse_markov(io::read_json_file(in));
  RealizeOptions opt;
  opt.rank_tol = rank_tol_from(tol);
  const auto report = check_rank_condition(mk, N, opt.rank_tol);
  std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
  print_report(log, report);
  const auto r = algorithm == "column" ? realize_columns(mk, N, opt) : realize_factor(mk, N, opt);
  log << "state dimension " << r.n() << "\n";
  io::write_json_file(out, io::system_to_json(r));
  return 0;
}

int cmd_reduce(const std::string& in, int N, const std::string& tol, const std::string& out) {
  const auto r = io::parse_system(io::read_json_file(in));
  RealizeOptions opt;
  opt.rank_tol = rank_tol_from(tol);
  const auto red = reduce(r, N, opt);
  std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
  log << "reduced dimension " << red.n() << " (from " << r.n() << ")\n";
  io::write_json_file(out, io::system_to_json(red));
  return 0;
}

int cmd_simulate(const std::string& in, const std::string& tag, const std::string& switching,
                 const std::string& input_file, const std::string& constant, int samples,
                 const std::string& out) {
  const auto r = io::parse_system(io::read_json_file(in));
  const auto w = parse_switching(switching, r.sys().alphabet());
  const double total = w.total_duration();
  PiecewiseConstantInput u;
  if (!input_file.empty()) {
    u = parse_input(io::read_json_file(input_file), r.sys().m());
  } else {
    Eigen::VectorXd value = Eigen::VectorXd::Zero(r.sys().m());
    if (!constant.empty()) {
      const auto c = parse_numbers(constant);
      if (static_cast<Eigen::Index>(c.size()) != r.sys().m())
        throw ParseError("constant input needs " + std::to_string(r.sys().m()) + " values");
      value = Eigen::Map<const Eigen::VectorXd>(c.data(), r.sys().m());
    }
    u = PiecewiseConstantInput::constant(value, total);
  }
  const Eigen::VectorXd x0 = tag.empty() ? Eigen::VectorXd::Zero(r.n()) : r.initial_state(tag);
  Json times = Json::array(), outputs = Json::array();
  for (int s = 1; s <= samples; ++s) {
    const double t = total * s / samples;
    const auto res = simulate_from_state(r.sys(), x0, u, s == samples ? w : truncate(w, t));
    times.push_back(t);
    outputs.push_back(std::vector<double>(res.y.data(), res.y.data() + res.y.size()));
  }
  io::write_json_file(out, {{"times", times}, {"outputs", outputs}});
  return 0;
}

int cmd_verify(const std::string& a_path, const std::string& b_path, int order, const std::string& tol) {
  const auto a = io::parse_system(io::read_json_file(a_path));
  const Json b_doc = io::read_json_file(b_path);
  const auto rt = rank_tol_from(tol);
  std::optional<int> mismatch;
  int K = order;
  if (io::detect_kind(b_doc) == io::FileKind::Markov) {
    const auto mk = io::parse_markov(b_doc);
    if (K < 0) K = mk.max_order();
    mismatch = markov_match_order(mk, a, K);
    print_certificate(std::cout, "A", certify_minimal(a, &mk, rt));
  } else {
    const auto b = io::parse_system(b_doc);
    // Two representations of dimensions n1, n2 agree everywhere once they
    // agree on words of length < n1 + n2.
    if (K < 0) K = static_cast<int>(std::max<Eigen::Index>(a.n() + b.n() - 1, 0));
    mismatch = markov_match_order(a, b, K);
    print_certificate(std::cout, "A", certify_minimal(a, nullptr, rt));
    print_certificate(std::cout, "B", certify_minimal(b, nullptr, rt));
    const auto iso = find_isomorphism(a, b);
    if (iso)
      std::cout << "isomorphic (residual " << iso.residual << ")\n";
    else
      std::cout << "no isomorphism: " << iso.reason << "\n";
  }
  if (mismatch) {
    std::cout << "first mismatch at order " << *mismatch << "\n";
    return kInequivalent;
  }
  std::cout << "equivalent through " << K << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realization of linear switched systems from Markov parameters"};
  app.require_subcommand(1);

  std::string in, in2, out = "-", tol, algorithm = "factor", tag, switching, input_file, constant;
  int max_order = 0, L = 0, M = 0, N = 0, order = -1, samples = 1;

  auto* markov = app.add_subcommand("markov", "Markov parameters of a system file");
  markov->add_option("system", in, "System file")->required();
  markov->add_option("--max-order", max_order, "Largest word length")->required()->check(CLI::NonNegativeNumber);
  markov->add_option("-o,--output", out, "Output file (- for stdout)");

  auto* hankel = app.add_subcommand("hankel", "Hankel block of a Markov file");
  hankel->add_option("markov", in, "Markov file")->required();
  hankel->add_option("-L", L, "Row word length")->required()->check(CLI::NonNegativeNumber);
  hankel->add_option("-M", M, "Column word length")->required()->check(CLI::NonNegativeNumber);
  hankel->add_option("--rank-tol", tol, "rel:x, abs:x or default");
  hankel->add_option("-o,--output", out, "Output file (- for stdout)");

  auto* realize = app.add_subcommand("realize", "Partial realization from a Markov file");
  realize->add_option("markov", in, "Markov file")->required();
  realize->add_option("-N", N, "Hankel block size")->required()->check(CLI::NonNegativeNumber);
  realize->add_option("--algorithm", algorithm, "column or factor")->check(CLI::IsMember({"column", "factor"}));
  realize->add_option("--rank-tol", tol, "rel:x, abs:x or default");
  realize->add_option("-o,--output", out, "Output file (- for stdout)");

  auto* red = app.add_subcommand("reduce", "Moment-matching reduction of a system");
  red->add_option("system", in, "System file")->required();
  red->add_option("-N", N, "Hankel block size")->required()->check(CLI::NonNegativeNumber);
  red->add_option("--rank-tol", tol, "rel:x, abs:x or default");
  red->add_option("-o,--output", out, "Output file (- for stdout)");

  auto* sim = app.add_subcommand("simulate", "Output samples along a switching sequence");
  sim->add_option("system", in, "System file")->required();
  sim->add_option("--tag", tag, "Initial-state tag (default: zero state)");
  sim->add_option("--switching", switching, "Switching sequence, e.g. q1:1,q2:0.5")->required();
  auto* input_opt = sim->add_option("--input", input_file, "Input file {breakpoints, values}");
  sim->add_option("--constant-input", constant, "Constant input, comma separated")->excludes(input_opt);
  sim->add_option("--samples", samples, "Number of evenly spaced samples")->check(CLI::PositiveNumber);
  sim->add_option("-o,--output", out, "Output file (- for stdout)");

  auto* verify = app.add_subcommand("verify", "Compare a system with a system or Markov file");
  verify->add_option("a", in, "System file")->required();
  verify->add_option("b", in2, "System or Markov file")->required();
  verify->add_option("--order", order, "Largest word length compared")->check(CLI::NonNegativeNumber);
  verify->add_option("--rank-tol", tol, "rel:x, abs:x or default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*markov) return cmd_markov(in, max_order, out);
    if (*hankel) return cmd_hankel(in, L, M, tol, out);
    if (*realize) return cmd_realize(in, N, algorithm, tol, out);
    if (*red) return cmd_reduce(in, N, tol, out);
    if (*sim) return cmd_simulate(in, tag, switching, input_file, constant, samples, out);
    if (*verify) return cmd_verify(in, in2, order, tol);
  } catch (const NoUniqueSolution& e) {
    std::cerr << "no realization: " << e.what() << "\n";
    return kDeclined;
  } catch (const ShiftInconsistent& e) {
    std::cerr << "no realization: " << e.what() << "\n";
    return kDeclined;
  } catch (const RankConditionFailed& e) {
    std::cerr << "no realization: " << e.what() << "\n";
    return kDeclined;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
