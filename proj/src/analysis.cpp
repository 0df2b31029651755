#include "lsreal/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "lsreal/errors.hpp"
#include "lsreal/hankel.hpp"

namespace lsreal {

namespace {

constexpr double kNoiseFloor = 1e-13;

// Appends v/|res| to q when its residual against span(q) is significant.
bool absorb(Eigen::MatrixXd& q, Eigen::VectorXd v, double floor, double rel_tol) {
  const double scale = v.norm();
  if (scale <= floor || scale == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) v -= q * (q.transpose() * v);
  const double nv = v.norm();
  if (nv <= rel_tol * scale) return false;
  q.conservativeResize(Eigen::NoChange, q.cols() + 1);
  q.col(q.cols() - 1) = v / nv;
  return true;
}

// Orthonormal basis of span{A_v g : |v| <= depth, g a column of gens}.
Eigen::MatrixXd generated_span(const Eigen::MatrixXd& gens, const std::vector<Eigen::MatrixXd>& as,
                               int depth, bool early_stop, double rel_tol) {
  const Eigen::Index n = gens.rows();
  Eigen::MatrixXd q(n, 0);
  std::vector<double> a_norm;
  for (const auto& a : as) a_norm.push_back(a.norm());

  if (early_stop) {
    for (Eigen::Index j = 0; j < gens.cols(); ++j) absorb(q, gens.col(j), 0.0, rel_tol);
    Eigen::MatrixXd frontier = q;
    for (int k = 1; k <= depth && frontier.cols() > 0 && q.cols() < n; ++k) {
      const Eigen::Index before = q.cols();
      for (std::size_t s = 0; s < as.size(); ++s) {
        const Eigen::MatrixXd img = as[s] * frontier;
        for (Eigen::Index j = 0; j < img.cols(); ++j)
          absorb(q, img.col(j), kNoiseFloor * a_norm[s], rel_tol);
      }
      frontier = q.rightCols(q.cols() - before);
    }
    return q;
  }

  // Exhaustive: every word up to the given depth.
  Eigen::MatrixXd level = gens;
  Eigen::VectorXd parent = gens.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < level.cols(); ++j) absorb(q, level.col(j), 0.0, rel_tol);
  for (int k = 1; k <= depth; ++k) {
    const Eigen::Index w = level.cols();
    Eigen::MatrixXd next(n, w * static_cast<Eigen::Index>(as.size()));
    Eigen::VectorXd bound(next.cols());
    for (std::size_t s = 0; s < as.size(); ++s) {
      next.middleCols(static_cast<Eigen::Index>(s) * w, w) = as[s] * level;
      bound.segment(static_cast<Eigen::Index>(s) * w, w) = parent * a_norm[s];
    }
    for (Eigen::Index j = 0; j < next.cols(); ++j)
      absorb(q, next.col(j), kNoiseFloor * bound(j), rel_tol);
    level = std::move(next);
    parent = std::move(bound);
  }
  return q;
}

int depth_for(const SubspaceOptions& opt, Eigen::Index n) {
  if (opt.max_depth >= 0) return opt.max_depth;
  return static_cast<int>(std::max<Eigen::Index>(n - 1, 0));
}

// Columns A_v G for |v| <= depth in canonical (word, index) order.
Eigen::MatrixXd reach_generators(const Realization& r, int depth) {
  const std::size_t d = r.sys().mode_count();
  const Eigen::MatrixXd g = r.generators();
  const Eigen::Index nj = g.cols();
  Eigen::MatrixXd all(r.n(), nj * static_cast<Eigen::Index>(word_count(d, depth)));
  Eigen::MatrixXd level = g;
  Eigen::Index col = 0;
  for (int k = 0; k <= depth; ++k) {
    all.middleCols(col, level.cols()) = level;
    col += level.cols();
    if (k == depth) break;
    const Eigen::Index words = level.cols() / std::max<Eigen::Index>(nj, 1);
    Eigen::MatrixXd next(r.n(), level.cols() * static_cast<Eigen::Index>(d));
    for (std::size_t q = 0; q < d; ++q) {
      const Eigen::MatrixXd img = r.sys().A(static_cast<int>(q)) * level;
      for (Eigen::Index v = 0; v < words; ++v)
        next.middleCols((v * static_cast<Eigen::Index>(d) + static_cast<Eigen::Index>(q)) * nj, nj) =
            img.middleCols(v * nj, nj);
    }
    level = std::move(next);
  }
  return all;
}

struct Residual {
  double tol;
  double worst = 0.0;
  void add(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& rhs) {
    const double den = std::max({lhs.norm(), rhs.norm(), 1e-12 / tol});
    worst = std::max(worst, (lhs - rhs).norm() / den);
  }
};

bool differs(const double* a, const double* b, std::size_t len, double tol) {
  double na = 0.0, nb = 0.0, nd = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    na = std::max(na, std::abs(a[i]));
    nb = std::max(nb, std::abs(b[i]));
    nd = std::max(nd, std::abs(a[i] - b[i]));
  }
  return !(nd <= std::max(tol * std::max(na, nb), 1e-12));
}

// True if any column of ya differs from the matching column of yb.
bool any_differs(const Eigen::MatrixXd& ya, const Eigen::MatrixXd& yb, double tol) {
  for (Eigen::Index c = 0; c < ya.cols(); ++c)
    if (differs(ya.col(c).data(), yb.col(c).data(), static_cast<std::size_t>(ya.rows()), tol))
      return true;
  return false;
}

void require_compatible(const Alphabet& a1, Eigen::Index p1, Eigen::Index m1,
                        const std::vector<std::string>& t1, const Alphabet& a2, Eigen::Index p2,
                        Eigen::Index m2, const std::vector<std::string>& t2) {
  if (!(a1 == a2)) throw IncompatibleFamilies("mode sets differ");
  if (p1 != p2 || m1 != m2) throw IncompatibleFamilies("input or output dimensions differ");
  if (t1 != t2) throw IncompatibleFamilies("initial-state tags differ");
}

std::optional<int> compare_families(const SeriesFamily& a, const SeriesFamily& b, int order,
                                    double tol) {
  const std::size_t d = a.alphabet_size();
  const std::size_t len = a.out_dim();
  for (int k = 0; k <= order; ++k) {
    const std::size_t lo = word_offset(d, k);
    const std::size_t hi = lo + ipow(d, k);
    for (std::size_t id = lo; id < hi; ++id)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (differs(a.value(j, id).data(), b.value(j, id).data(), len, tol)) return k;
  }
  return std::nullopt;
}

class StreamCompare {
 public:
  StreamCompare(const Realization& a, const Realization& b, int order, double tol)
      : a_(a), b_(b), order_(order), tol_(tol), best_(order + 1) {
    ca_ = a.sys().stacked_C();
    cb_ = b.sys().stacked_C();
  }

  std::optional<int> run() {
    visit(a_.generators(), b_.generators(), 0);
    if (best_ > order_) return std::nullopt;
    return best_;
  }

 private:
  static constexpr int kBatchLevels = 5;

  void visit(const Eigen::MatrixXd& xa, const Eigen::MatrixXd& xb, int k) {
    if (k >= best_) return;
    if (order_ - k <= kBatchLevels) {
      batch(xa, xb, k);
      return;
    }
    if (any_differs(ca_ * xa, cb_ * xb, tol_)) {
      best_ = k;
      return;
    }
    for (std::size_t q = 0; q < a_.sys().mode_count(); ++q) {
      const int s = static_cast<int>(q);
      visit(a_.sys().A(s) * xa, b_.sys().A(s) * xb, k + 1);
    }
  }

  // Remaining levels under one word, a whole level at a time. Column order
  // within a level does not matter as long as both sides agree.
  void batch(Eigen::MatrixXd xa, Eigen::MatrixXd xb, int k) {
    const std::size_t d = a_.sys().mode_count();
    for (int level = k; level <= order_ && level < best_; ++level) {
      if (any_differs(ca_ * xa, cb_ * xb, tol_)) {
        best_ = level;
        return;
      }
      if (level == order_) return;
      Eigen::MatrixXd na(xa.rows(), xa.cols() * static_cast<Eigen::Index>(d));
      Eigen::MatrixXd nb(xb.rows(), xb.cols() * static_cast<Eigen::Index>(d));
      for (std::size_t q = 0; q < d; ++q) {
        const int s = static_cast<int>(q);
        const auto off = static_cast<Eigen::Index>(q) * xa.cols();
        na.middleCols(off, xa.cols()) = a_.sys().A(s) * xa;
        nb.middleCols(off, xb.cols()) = b_.sys().A(s) * xb;
      }
      xa = std::move(na);
      xb = std::move(nb);
    }
  }

  const Realization& a_;
  const Realization& b_;
  int order_;
  double tol_;
  int best_;
  Eigen::MatrixXd ca_, cb_;
};

}  // namespace

SubspaceBasis reach_space(const Representation& rep, const SubspaceOptions& opt) {
  const int depth = depth_for(opt, rep.state_dim());
  return {SubspaceBasis::Kind::Reach,
          generated_span(rep.B(), rep.A(), depth, opt.early_stop, opt.rel_tol), depth};
}

SubspaceBasis obs_space(const Representation& rep, const SubspaceOptions& opt) {
  const int depth = depth_for(opt, rep.state_dim());
  std::vector<Eigen::MatrixXd> at;
  for (const auto& a : rep.A()) at.push_back(a.transpose());
  const Eigen::MatrixXd rows =
      generated_span(rep.C().transpose(), at, depth, opt.early_stop, opt.rel_tol);
  return {SubspaceBasis::Kind::Obs, orthogonal_complement(rows, rep.state_dim()), depth};
}

MinimalityCertificate certify_minimal(const Realization& r, const MarkovFamily* mk,
                                      RankTolerance tol) {
  const auto rep = lss_to_representation(r);
  MinimalityCertificate cert;
  cert.dim = r.n();
  cert.reach_dim = reach_space(rep).dim();
  cert.obs_kernel_dim = obs_space(rep).dim();
  cert.is_minimal = cert.reach_dim == cert.dim && cert.obs_kernel_dim == 0;
  if (mk) {
    const int k = mk->max_order();
    cert.hankel_rank = numerical_rank(build_block(*mk, (k + 1) / 2, k / 2).data, tol);
  }
  return cert;
}

IsomorphismResult find_isomorphism(const Realization& r1, const Realization& r2, double tol) {
  const Lss& s1 = r1.sys();
  const Lss& s2 = r2.sys();
  if (!(s1.alphabet() == s2.alphabet())) throw DimensionMismatch("mode sets differ");
  if (s1.m() != s2.m() || s1.p() != s2.p())
    throw DimensionMismatch("input or output dimensions differ");
  if (r1.tags() != r2.tags()) throw DimensionMismatch("initial-state tags differ");

  IsomorphismResult res;
  const Eigen::Index n = r1.n();
  if (n != r2.n()) {
    res.reason = "state dimensions differ (" + std::to_string(n) + " vs " +
                 std::to_string(r2.n()) + ")";
    return res;
  }
  if (n == 0) {
    res.S = Eigen::MatrixXd(0, 0);
    return res;
  }

  const int depth = static_cast<int>(n - 1);
  const Eigen::MatrixXd x1t = reach_generators(r1, depth).transpose();
  const Eigen::MatrixXd x2t = reach_generators(r2, depth).transpose();
  const LowRankSvd svd1(x1t);
  if (svd1.rank() != n) {
    res.reason = "first realization is not semi-reachable";
    return res;
  }
  if (numerical_rank(x2t) != n) {
    res.reason = "second realization is not semi-reachable";
    return res;
  }
  const Eigen::MatrixXd st =
      svd1.V() * (svd1.S().cwiseInverse().asDiagonal() * (svd1.U().transpose() * x2t));
  Eigen::MatrixXd s = st.transpose();
  if (numerical_rank(s) != n) {
    res.reason = "generator map is singular";
    return res;
  }

  Residual check{tol};
  check.add(x1t * s.transpose(), x2t);
  for (std::size_t q = 0; q < s1.mode_count(); ++q) {
    const int k = static_cast<int>(q);
    check.add(s2.A(k) * s, s * s1.A(k));
    check.add(s * s1.B(k), s2.B(k));
    check.add(s2.C(k) * s, s1.C(k));
  }
  for (const auto& [tag, x] : r1.mu()) check.add(s * x, r2.initial_state(tag));
  res.residual = check.worst;
  if (check.worst > tol) {
    res.reason = "morphism equations fail (residual " + std::to_string(check.worst) + ")";
    return res;
  }
  res.S = std::move(s);
  return res;
}

std::optional<int> markov_match_order(const MarkovFamily& a, const MarkovFamily& b, double tol) {
  require_compatible(a.alphabet(), a.p(), a.m(), a.tags(), b.alphabet(), b.p(), b.m(), b.tags());
  return compare_families(a.series(), b.series(), std::min(a.max_order(), b.max_order()), tol);
}

std::optional<int> markov_match_order(const Realization& a, const Realization& b, int order,
                                      double tol) {
  require_compatible(a.sys().alphabet(), a.sys().p(), a.sys().m(), a.tags(), b.sys().alphabet(),
                     b.sys().p(), b.sys().m(), b.tags());
  if (order < 0) throw DimensionError("negative order");
  return StreamCompare(a, b, order, tol).run();
}

std::optional<int> markov_match_order(const MarkovFamily& mk, const Realization& r, int order,
                                      double tol) {
  require_compatible(mk.alphabet(), mk.p(), mk.m(), mk.tags(), r.sys().alphabet(), r.sys().p(),
                     r.sys().m(), r.tags());
  if (order < 0 || order > mk.max_order())
    throw InsufficientOrder("comparison order exceeds the available data");
  return compare_families(mk.series(), markov_from_lss(r, order).series(), order, tol);
}

}  // namespace lsreal
