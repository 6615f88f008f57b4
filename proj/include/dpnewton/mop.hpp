#pragma once

#include "dpnewton/common.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dpn {

/// A constrained multi-objective problem together with its derivative
/// providers. All callbacks are pure; eval_h/eval_g may be empty when
/// p/m are zero.
struct MopDefinition {
  std::string id;
  int n = 0;  // decision dimension
  int k = 0;  // objective dimension
  int p = 0;  // equality count
  int m = 0;  // inequality count
  Vec lower, upper;

  std::function<Vec(const Vec&)> eval_f;
  std::function<Vec(const Vec&)> eval_h;
  std::function<Vec(const Vec&)> eval_g;
  std::function<Mat(const Vec&)> jac_f;
  std::function<std::vector<Mat>(const Vec&)> hess_f;
  std::function<Mat(const Vec&)> jac_h;
  std::function<Mat(const Vec&)> jac_g;
  // Optional second derivatives of constraints; only consumed by the
  // full Newton system that keeps the S-term.
  std::function<std::vector<Mat>(const Vec&)> hess_h;
  std::function<std::vector<Mat>(const Vec&)> hess_g;

  // Optional fused evaluation (value + Jacobian + Hessians in one pass);
  // falls back to the individual providers when absent.
  struct Derivs {
    Vec f;
    Mat jac;
    std::vector<Mat> hess;
  };
  std::function<Derivs(const Vec&)> derivs_f;

  Derivs objective_derivatives(const Vec& x) const {
    if (derivs_f) return derivs_f(x);
    return Derivs{eval_f(x), jac_f(x), hess_f(x)};
  }

  Vec h_of(const Vec& x) const { return p > 0 ? eval_h(x) : Vec(0); }
  Vec g_of(const Vec& x) const { return m > 0 ? eval_g(x) : Vec(0); }

  void validate() const;
};

struct EvaluatedPoint {
  Vec x;
  Vec fx;
  Vec hx;
  Vec gx;
};

/// The stacked decision variable of the set problem: mu points of
/// dimension n plus one multiplier vector per point (sized to that
/// point's active constraint set).
struct SetIterate {
  std::vector<Vec> points;
  std::vector<Vec> multipliers;

  SetIterate() = default;
  explicit SetIterate(std::vector<Vec> pts)
      : points(std::move(pts)), multipliers(points.size(), Vec(0)) {}

  int mu() const { return static_cast<int>(points.size()); }

  /// Concatenates the points into the single vector X in R^{mu*n}.
  Vec flatten() const;
  static SetIterate from_flat(const Vec& flat, int mu, int n);
};

std::vector<EvaluatedPoint> evaluate_set(const MopDefinition& mop,
                                         const SetIterate& iterate);

/// Returns a definition whose inequality set additionally carries the box
/// bounds (lower_i - x_i <= 0 and x_i - upper_i <= 0, appended after native
/// inequalities); m grows by 2n.
MopDefinition box_to_inequalities(const MopDefinition& mop);

struct SecondOrderReport {
  double max_rel_jac_f = 0.0;
  double max_rel_hess_f = 0.0;
  double max_rel_jac_h = 0.0;
  double max_rel_jac_g = 0.0;
  bool within(double tol) const {
    return max_rel_jac_f <= tol && max_rel_hess_f <= tol &&
           max_rel_jac_h <= tol && max_rel_jac_g <= tol;
  }
};

/// Compares the analytic derivative providers against central finite
/// differences with step 1e-5*(1+|x_i|); reports max relative error per
/// block. Throws on a non-finite function value at any probe.
SecondOrderReport second_order_check(const MopDefinition& mop, const Vec& x,
                                     double tol);

/// Max constraint violation (|h| and positive part of g); box bounds are
/// included only when they are part of the inequality set.
double constraint_violation(const MopDefinition& mop, const Vec& x);

}  // namespace dpn
