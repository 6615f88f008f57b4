#include "dpnewton/indicators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dpn {

NearestAssignment nearest_assignment(const std::vector<Vec>& fx,
                                     const std::vector<Vec>& Z,
                                     double tie_tol) {
  const int mu = static_cast<int>(fx.size());
  const int M = static_cast<int>(Z.size());
  NearestAssignment na;
  na.j.assign(mu, -1);
  na.I.assign(mu, {});
  na.m.assign(mu, 0);

  // Population -> nearest reference.
  for (int i = 0; i < mu; ++i) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    for (int q = 0; q < M; ++q) {
      const double d = (fx[i] - Z[q]).norm();
      if (d < best) {
        second = best;
        best = d;
        na.j[i] = q;
      } else if (d < second) {
        second = d;
      }
    }
    if (M > 1 && second - best <= tie_tol * (1.0 + best)) {
      na.unique = false;
      na.ties.emplace_back(i, na.j[i]);
    }
  }
  // Reference -> nearest population element, inverted into I_l.
  for (int q = 0; q < M; ++q) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int l = -1;
    for (int i = 0; i < mu; ++i) {
      const double d = (Z[q] - fx[i]).norm();
      if (d < best) {
        second = best;
        best = d;
        l = i;
      } else if (d < second) {
        second = d;
      }
    }
    if (mu > 1 && second - best <= tie_tol * (1.0 + best)) {
      na.unique = false;
      na.ties.emplace_back(l, q);
    }
    na.I[l].push_back(q);
    ++na.m[l];
  }
  return na;
}

IndicatorReport delta_p(const std::vector<Vec>& A, const std::vector<Vec>& B,
                        int p) {
  if (A.empty() || B.empty()) throw Error("delta_p: empty set");
  if (p < 1) throw Error("delta_p: p must be >= 1");
  IndicatorReport rep;
  rep.p = p;
  rep.assignment = nearest_assignment(A, B);

  auto dist_to = [](const Vec& a, const std::vector<Vec>& S) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& s : S) best = std::min(best, (a - s).norm());
    return best;
  };

  double gd2 = 0.0, igd2 = 0.0, gdp = 0.0, igdp = 0.0;
  for (const Vec& a : A) {
    const double d = dist_to(a, B);
    gd2 += d * d;
    gdp += std::pow(d, p);
  }
  for (const Vec& b : B) {
    const double d = dist_to(b, A);
    igd2 += d * d;
    igdp += std::pow(d, p);
  }
  rep.gd2sq = gd2 / static_cast<double>(A.size());
  rep.igd2sq = igd2 / static_cast<double>(B.size());
  rep.delta2 = std::max(std::sqrt(rep.gd2sq), std::sqrt(rep.igd2sq));
  rep.gdp = std::pow(gdp / static_cast<double>(A.size()), 1.0 / p);
  rep.igdp = std::pow(igdp / static_cast<double>(B.size()), 1.0 / p);
  rep.deltap = std::max(rep.gdp, rep.igdp);
  return rep;
}

namespace {

std::vector<Vec> images(const MopDefinition& mop, const SetIterate& iterate) {
  std::vector<Vec> fx;
  fx.reserve(iterate.points.size());
  for (const Vec& x : iterate.points) fx.push_back(mop.eval_f(x));
  return fx;
}

[[noreturn]] void throw_tie(const NearestAssignment& na, const char* which) {
  std::ostringstream os;
  os << which << ": nearest neighbor not unique (non-differentiable point); "
     << na.ties.size() << " tie(s), first at element " << na.ties[0].first;
  throw TieError(os.str(), na.ties);
}

}  // namespace

Mat BlockDiag::dense() const {
  Eigen::Index total = 0;
  for (const Mat& b : blocks) total += b.rows();
  Mat out = Mat::Zero(total, total);
  Eigen::Index at = 0;
  for (const Mat& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

GradientResult gd2sq_gradient(const MopDefinition& mop,
                              const SetIterate& iterate,
                              const std::vector<Vec>& Z) {
  const int mu = iterate.mu();
  const std::vector<Vec> fx = images(mop, iterate);
  NearestAssignment na = nearest_assignment(fx, Z);
  if (!na.unique) throw_tie(na, "gd2sq_gradient");

  GradientResult out;
  out.grad = Vec(static_cast<Eigen::Index>(mu) * mop.n);
  for (int i = 0; i < mu; ++i) {
    const Mat J = mop.jac_f(iterate.points[i]);
    out.grad.segment(static_cast<Eigen::Index>(i) * mop.n, mop.n) =
        (2.0 / mu) * J.transpose() * (fx[i] - Z[na.j[i]]);
  }
  out.assignment = std::move(na);
  return out;
}

BlockDiag gd2sq_hessian(const MopDefinition& mop, const SetIterate& iterate,
                        const std::vector<Vec>& Z) {
  const int mu = iterate.mu();
  const std::vector<Vec> fx = images(mop, iterate);
  const NearestAssignment na = nearest_assignment(fx, Z);
  if (!na.unique) throw_tie(na, "gd2sq_hessian");

  BlockDiag out;
  out.blocks.reserve(mu);
  for (int i = 0; i < mu; ++i) {
    const auto d = mop.objective_derivatives(iterate.points[i]);
    const Vec alpha = d.f - Z[na.j[i]];
    Mat block = d.jac.transpose() * d.jac;
    for (int l = 0; l < mop.k; ++l) block += alpha[l] * d.hess[l];
    out.blocks.push_back((2.0 / mu) * block);
  }
  return out;
}

GradientResult igd2sq_gradient(const MopDefinition& mop,
                               const SetIterate& iterate,
                               const std::vector<Vec>& Z) {
  const int mu = iterate.mu();
  const int M = static_cast<int>(Z.size());
  const std::vector<Vec> fx = images(mop, iterate);
  NearestAssignment na = nearest_assignment(fx, Z);
  if (!na.unique) throw_tie(na, "igd2sq_gradient");

  GradientResult out;
  out.grad = Vec::Zero(static_cast<Eigen::Index>(mu) * mop.n);
  for (int l = 0; l < mu; ++l) {
    if (na.m[l] == 0) continue;  // vanishing sub-gradient
    Vec zsum = Vec::Zero(mop.k);
    for (int q : na.I[l]) zsum += Z[q];
    const Mat J = mop.jac_f(iterate.points[l]);
    out.grad.segment(static_cast<Eigen::Index>(l) * mop.n, mop.n) =
        (2.0 / M) * J.transpose() * (na.m[l] * fx[l] - zsum);
  }
  out.assignment = std::move(na);
  return out;
}

BlockDiag igd2sq_hessian(const MopDefinition& mop, const SetIterate& iterate,
                         const std::vector<Vec>& Z) {
  const int mu = iterate.mu();
  const int M = static_cast<int>(Z.size());
  const std::vector<Vec> fx = images(mop, iterate);
  const NearestAssignment na = nearest_assignment(fx, Z);
  if (!na.unique) throw_tie(na, "igd2sq_hessian");

  BlockDiag out;
  out.blocks.reserve(mu);
  for (int l = 0; l < mu; ++l) {
    if (na.m[l] == 0) {
      out.blocks.push_back(Mat::Zero(mop.n, mop.n));
      continue;
    }
    Vec y = Vec::Zero(mop.k);
    for (int q : na.I[l]) y += Z[q];
    const auto d = mop.objective_derivatives(iterate.points[l]);
    const Vec alpha = na.m[l] * d.f - y;
    Mat block = na.m[l] * (d.jac.transpose() * d.jac);
    for (int i = 0; i < mop.k; ++i) block += alpha[i] * d.hess[i];
    out.blocks.push_back((2.0 / M) * block);
  }
  return out;
}

}  // namespace dpn
