#include "dpnewton/mop.hpp"

#include <cmath>
#include <sstream>

namespace dpn {

void MopDefinition::validate() const {
  if (n <= 0 || k <= 0) throw Error("mop '" + id + "': n and k must be positive");
  if (lower.size() != n || upper.size() != n)
    throw Error("mop '" + id + "': bounds must have dimension n");
  for (int i = 0; i < n; ++i) {
    if (!(lower[i] < upper[i])) {
      std::ostringstream os;
      os << "mop '" << id << "': lower[" << i << "]=" << lower[i]
         << " must be < upper[" << i << "]=" << upper[i];
      throw Error(os.str());
    }
  }
  if (!eval_f) throw Error("mop '" + id + "': eval_f missing");
}

Vec SetIterate::flatten() const {
  if (points.empty()) return Vec(0);
  const int n = static_cast<int>(points.front().size());
  Vec flat(static_cast<Eigen::Index>(points.size()) * n);
  for (size_t i = 0; i < points.size(); ++i)
    flat.segment(static_cast<Eigen::Index>(i) * n, n) = points[i];
  return flat;
}

SetIterate SetIterate::from_flat(const Vec& flat, int mu, int n) {
  if (flat.size() != static_cast<Eigen::Index>(mu) * n)
    throw Error("from_flat: size mismatch");
  std::vector<Vec> pts(mu);
  for (int i = 0; i < mu; ++i) pts[i] = flat.segment(static_cast<Eigen::Index>(i) * n, n);
  return SetIterate(std::move(pts));
}

std::vector<EvaluatedPoint> evaluate_set(const MopDefinition& mop,
                                         const SetIterate& iterate) {
  std::vector<EvaluatedPoint> out;
  out.reserve(iterate.points.size());
  for (size_t i = 0; i < iterate.points.size(); ++i) {
    const Vec& x = iterate.points[i];
    if (x.size() != mop.n) {
      std::ostringstream os;
      os << "evaluate_set: point " << i << " has dimension " << x.size()
         << ", expected " << mop.n;
      throw Error(os.str());
    }
    EvaluatedPoint ep;
    ep.x = x;
    ep.fx = mop.eval_f(x);
    ep.hx = mop.h_of(x);
    ep.gx = mop.g_of(x);
    out.push_back(std::move(ep));
  }
  return out;
}

MopDefinition box_to_inequalities(const MopDefinition& mop) {
  for (int i = 0; i < mop.n; ++i)
    if (!std::isfinite(mop.lower[i]) || !std::isfinite(mop.upper[i]))
      throw Error("box_to_inequalities: bounds must be finite");

  MopDefinition out = mop;
  const int n = mop.n, m0 = mop.m;
  const Vec lo = mop.lower, up = mop.upper;
  const auto native_g = mop.eval_g;
  const auto native_jac_g = mop.jac_g;
  const auto native_hess_g = mop.hess_g;

  out.m = m0 + 2 * n;
  out.eval_g = [n, m0, lo, up, native_g](const Vec& x) {
    Vec g(m0 + 2 * n);
    if (m0 > 0) g.head(m0) = native_g(x);
    g.segment(m0, n) = lo - x;
    g.segment(m0 + n, n) = x - up;
    return g;
  };
  out.jac_g = [n, m0, native_jac_g](const Vec& x) {
    Mat J = Mat::Zero(m0 + 2 * n, n);
    if (m0 > 0) J.topRows(m0) = native_jac_g(x);
    J.block(m0, 0, n, n) = -Mat::Identity(n, n);
    J.block(m0 + n, 0, n, n) = Mat::Identity(n, n);
    return J;
  };
  out.hess_g = [n, m0, native_hess_g](const Vec& x) {
    std::vector<Mat> H;
    H.reserve(m0 + 2 * n);
    if (m0 > 0) {
      if (!native_hess_g) throw Error("hess_g missing for native inequalities");
      H = native_hess_g(x);
    }
    for (int i = 0; i < 2 * n; ++i) H.push_back(Mat::Zero(n, n));
    return H;
  };
  return out;
}

namespace {

double rel_err(const Mat& approx, const Mat& exact) {
  const double scale = 1.0 + exact.cwiseAbs().maxCoeff();
  return (approx - exact).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

SecondOrderReport second_order_check(const MopDefinition& mop, const Vec& x,
                                     double /*tol*/) {
  SecondOrderReport rep;
  const int n = mop.n;
  Vec steps(n);
  for (int i = 0; i < n; ++i) steps[i] = 1e-5 * (1.0 + std::abs(x[i]));

  auto central = [&](const std::function<Vec(const Vec&)>& fn, int rows) {
    Mat J(rows, n);
    for (int i = 0; i < n; ++i) {
      Vec xp = x, xm = x;
      xp[i] += steps[i];
      xm[i] -= steps[i];
      const Vec fp = fn(xp), fm = fn(xm);
      if (!is_finite(fp) || !is_finite(fm))
        throw Error("second_order_check: non-finite value at probe " +
                    std::to_string(i));
      J.col(i) = (fp - fm) / (2.0 * steps[i]);
    }
    return J;
  };

  rep.max_rel_jac_f = rel_err(central(mop.eval_f, mop.k), mop.jac_f(x));

  // Hessians against central differences of the analytic Jacobian rows.
  const std::vector<Mat> H = mop.hess_f(x);
  for (int l = 0; l < mop.k; ++l) {
    auto grad_l = [&](const Vec& xx) { return Vec(mop.jac_f(xx).row(l).transpose()); };
    rep.max_rel_hess_f = std::max(rep.max_rel_hess_f, rel_err(central(grad_l, n), H[l]));
  }

  if (mop.p > 0)
    rep.max_rel_jac_h = rel_err(central(mop.eval_h, mop.p), mop.jac_h(x));
  if (mop.m > 0)
    rep.max_rel_jac_g = rel_err(central(mop.eval_g, mop.m), mop.jac_g(x));
  return rep;
}

double constraint_violation(const MopDefinition& mop, const Vec& x) {
  double v = 0.0;
  if (mop.p > 0) v = mop.eval_h(x).cwiseAbs().maxCoeff();
  if (mop.m > 0) v = std::max(v, mop.eval_g(x).maxCoeff());
  return std::max(v, 0.0);
}

}  // namespace dpn
