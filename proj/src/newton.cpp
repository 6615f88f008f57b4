#include "dpnewton/newton.hpp"

#include "dpnewton/io.hpp"
#include "dpnewton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dpn {

ActiveSet ActiveSet::equalities_only(int mu, int p) {
  ActiveSet as;
  as.ids.assign(mu, {});
  for (auto& v : as.ids)
    for (int i = 0; i < p; ++i) v.push_back(i);
  return as;
}

bool ActiveSet::contains(int individual, int constraint_id) const {
  const auto& v = ids[individual];
  return std::find(v.begin(), v.end(), constraint_id) != v.end();
}

Vec active_values(const MopDefinition& mop, const Vec& x,
                  const std::vector<int>& ids) {
  Vec h = mop.h_of(x);
  Vec g = mop.g_of(x);
  Vec out(static_cast<Eigen::Index>(ids.size()));
  for (size_t i = 0; i < ids.size(); ++i)
    out[static_cast<Eigen::Index>(i)] =
        ids[i] < mop.p ? h[ids[i]] : g[ids[i] - mop.p];
  return out;
}

Mat active_jacobian(const MopDefinition& mop, const Vec& x,
                    const std::vector<int>& ids) {
  Mat out(static_cast<Eigen::Index>(ids.size()), mop.n);
  Mat Jh, Jg;
  bool have_h = false, have_g = false;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < mop.p) {
      if (!have_h) {
        Jh = mop.jac_h(x);
        have_h = true;
      }
      out.row(static_cast<Eigen::Index>(i)) = Jh.row(ids[i]);
    } else {
      if (!have_g) {
        Jg = mop.jac_g(x);
        have_g = true;
      }
      out.row(static_cast<Eigen::Index>(i)) = Jg.row(ids[i] - mop.p);
    }
  }
  return out;
}

double near_activity_tol(const MopDefinition& mop, const SetIterate& iterate,
                         double base) {
  double scale = 0.0;
  if (mop.m > 0)
    for (const Vec& x : iterate.points)
      scale = std::max(scale, mop.eval_g(x).cwiseAbs().maxCoeff());
  return base * (1.0 + scale);
}

namespace {

BlockStep solve_saddle(const Mat& A, const Mat& H, const Vec& top,
                       const Vec& bottom) {
  const Eigen::Index n = A.rows(), pa = H.rows();
  Mat K = Mat::Zero(n + pa, n + pa);
  K.topLeftCorner(n, n) = A;
  if (pa > 0) {
    K.topRightCorner(n, pa) = H.transpose();
    K.bottomLeftCorner(pa, n) = H;
  }
  Vec rhs(n + pa);
  rhs.head(n) = top;
  rhs.tail(pa) = bottom;
  if (!is_finite(K) || !is_finite(rhs))
    throw Error("newton block: non-finite entries in the saddle system");
  const LinearSolveResult sol = solve_linear(K, rhs);
  BlockStep step;
  step.dx = sol.x.head(n);
  step.dlambda = sol.x.tail(pa);
  step.fallback = sol.fallback;
  return step;
}

Vec padded_lambda(const Vec& lambda, Eigen::Index rows) {
  Vec out = Vec::Zero(rows);
  out.head(std::min(rows, lambda.size())) = lambda.head(std::min(rows, lambda.size()));
  return out;
}

}  // namespace

BlockStep gd_newton_block(const MopDefinition& mop, const Vec& x,
                          const Vec& lambda, const Vec& z,
                          const std::vector<int>& active_ids, int mu) {
  const auto d = mop.objective_derivatives(x);
  const Vec alpha = d.f - z;
  Mat Dg = d.jac.transpose() * d.jac;
  for (int l = 0; l < mop.k; ++l) Dg += alpha[l] * d.hess[l];
  const Mat H = active_jacobian(mop, x, active_ids);
  const Vec lam = padded_lambda(lambda, H.rows());
  const Vec top = -(2.0 / mu) * d.jac.transpose() * alpha - H.transpose() * lam;
  return solve_saddle((2.0 / mu) * Dg, H, top, -active_values(mop, x, active_ids));
}

BlockStep igd_newton_block(const MopDefinition& mop, const Vec& x,
                           const Vec& lambda,
                           const std::vector<Vec>& attracted_refs,
                           const std::vector<int>& active_ids, int M) {
  const int m_l = static_cast<int>(attracted_refs.size());
  if (m_l == 0) {
    // Vanished sub-gradient: pure feasibility step via the pseudo-inverse.
    BlockStep step;
    step.feasibility_step = true;
    const Mat H = active_jacobian(mop, x, active_ids);
    const Vec hval = active_values(mop, x, active_ids);
    if (H.rows() == 0) {
      step.dx = Vec::Zero(mop.n);
      step.dlambda = Vec(0);
      return step;
    }
    if (!is_finite(H) || !is_finite(hval))
      throw Error("igd block: non-finite entries in the feasibility step");
    if (hval.isZero(0.0)) {
      step.dx = Vec::Zero(mop.n);
    } else {
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(H);
      step.dx = -cod.solve(hval);
    }
    step.dlambda = -padded_lambda(lambda, H.rows());
    return step;
  }

  const auto d = mop.objective_derivatives(x);
  Vec y = Vec::Zero(mop.k);
  for (const Vec& z : attracted_refs) y += z;
  const Vec alpha = m_l * d.f - y;
  Mat Dg = m_l * (d.jac.transpose() * d.jac);
  for (int l = 0; l < mop.k; ++l) Dg += alpha[l] * d.hess[l];
  const Mat H = active_jacobian(mop, x, active_ids);
  const Vec lam = padded_lambda(lambda, H.rows());
  const Vec top = -(2.0 / M) * d.jac.transpose() * alpha - H.transpose() * lam;
  return solve_saddle((2.0 / M) * Dg, H, top, -active_values(mop, x, active_ids));
}

BlockStep matched_newton_block(const MopDefinition& mop, const Vec& x,
                               const Vec& lambda, const Vec& z,
                               const std::vector<int>& active_ids) {
  return gd_newton_block(mop, x, lambda, z, active_ids, 1);
}

ActiveSet activate_inequalities(const MopDefinition& mop,
                                const SetIterate& iterate,
                                const std::vector<Vec>& directions,
                                double tol) {
  const int mu = iterate.mu();
  ActiveSet as = ActiveSet::equalities_only(mu, mop.p);
  if (mop.m == 0) return as;
  for (int i = 0; i < mu; ++i) {
    const Vec& x = iterate.points[i];
    const Vec g = mop.eval_g(x);
    const Mat Jg = mop.jac_g(x);
    const Vec& dx = directions[i];
    for (int l = 0; l < mop.m; ++l) {
      if (g[l] <= -tol) continue;                    // not nearly active
      if (Jg.row(l).dot(dx) < 0.0) continue;         // the step improves it
      as.ids[i].push_back(mop.p + l);
    }
  }
  return as;
}

namespace {

struct LineSearchTarget {
  enum Kind { kMatched, kIgd, kFeasibility } kind = kMatched;
  Vec z;
  std::vector<Vec> refs;
};

double merit_value(const MopDefinition& mop, const Vec& x,
                   const std::vector<int>& ids, const LineSearchTarget& tgt,
                   double rho) {
  double m = 0.0;
  if (tgt.kind == LineSearchTarget::kMatched) {
    m = (mop.eval_f(x) - tgt.z).squaredNorm();
  } else if (tgt.kind == LineSearchTarget::kIgd) {
    const Vec f = mop.eval_f(x);
    for (const Vec& z : tgt.refs) m += (f - z).squaredNorm();
  }
  return m + rho * active_values(mop, x, ids).squaredNorm();
}

// Backtracking under Armijo's condition; returns the accepted step size
// (0 when no halving yields sufficient decrease).
double armijo_step(const MopDefinition& mop, const Vec& x, const Vec& dx,
                   const std::vector<int>& ids, const LineSearchTarget& tgt,
                   const NewtonParams& params) {
  const double m0 = merit_value(mop, x, ids, tgt, params.merit_rho);

  double deriv = 0.0;
  if (tgt.kind != LineSearchTarget::kFeasibility) {
    const Mat J = mop.jac_f(x);
    const Vec f = mop.eval_f(x);
    if (tgt.kind == LineSearchTarget::kMatched) {
      deriv += 2.0 * (f - tgt.z).dot(J * dx);
    } else {
      for (const Vec& z : tgt.refs) deriv += 2.0 * (f - z).dot(J * dx);
    }
  }
  if (!ids.empty()) {
    const Mat H = active_jacobian(mop, x, ids);
    deriv += 2.0 * params.merit_rho * active_values(mop, x, ids).dot(H * dx);
  }

  double t = 1.0;
  for (int h = 0; h <= params.max_halvings; ++h) {
    const double mt = merit_value(mop, x + t * dx, ids, tgt, params.merit_rho);
    if (std::isfinite(mt) && mt <= m0 + params.armijo_c * t * deriv) return t;
    t *= params.backtrack_factor;
  }
  return 0.0;
}

// Per-individual multiplier bookkeeping across changing active sets.
using LambdaMap = std::map<int, double>;

std::vector<LambdaMap> lambda_maps(const SetIterate& iterate,
                                   const ActiveSet* prev, int p) {
  std::vector<LambdaMap> maps(iterate.mu());
  for (int i = 0; i < iterate.mu(); ++i) {
    const Vec& lam = iterate.multipliers[i];
    if (prev && static_cast<Eigen::Index>(prev->ids[i].size()) == lam.size()) {
      for (size_t q = 0; q < prev->ids[i].size(); ++q)
        maps[i][prev->ids[i][q]] = lam[static_cast<Eigen::Index>(q)];
    } else if (lam.size() == p) {
      for (int q = 0; q < p; ++q) maps[i][q] = lam[q];
    }
  }
  return maps;
}

Vec lambda_for_ids(const LambdaMap& map, const std::vector<int>& ids) {
  Vec lam = Vec::Zero(static_cast<Eigen::Index>(ids.size()));
  for (size_t q = 0; q < ids.size(); ++q) {
    const auto it = map.find(ids[q]);
    if (it != map.end()) lam[static_cast<Eigen::Index>(q)] = it->second;
  }
  return lam;
}

// Shared population-step driver for the matched, GD and IGD variants.
StepResult population_step(
    const MopDefinition& mop, const SetIterate& iterate,
    const NewtonParams& params, const ActiveSet* prev_active, char branch,
    const std::function<BlockStep(int, const Vec&, const Vec&,
                                  const std::vector<int>&)>& block_solver,
    const std::function<LineSearchTarget(int)>& target_for,
    const ActiveSet* fixed_active = nullptr) {
  const int mu = iterate.mu();
  StepResult res;
  res.branch = branch;
  res.next = iterate;
  res.active.ids.assign(mu, {});
  res.step_sizes.assign(mu, 0.0);
  res.fallbacks.assign(mu, false);
  res.failed.assign(mu, false);

  const std::vector<LambdaMap> maps = lambda_maps(iterate, prev_active, mop.p);
  const double tol = near_activity_tol(mop, iterate, params.activation_tol_base);
  const ActiveSet eq = ActiveSet::equalities_only(mu, mop.p);

  int failures = 0;
  std::string first_error;
  for (int i = 0; i < mu; ++i) {
    const Vec& x = iterate.points[i];
    try {
      std::vector<int> ids;
      BlockStep step;
      if (fixed_active) {
        ids = fixed_active->ids[i];
        step = block_solver(i, x, lambda_for_ids(maps[i], ids), ids);
      } else {
        // Trial solve on the equalities, then activation, then the re-solve.
        const BlockStep trial =
            block_solver(i, x, lambda_for_ids(maps[i], eq.ids[i]), eq.ids[i]);
        SetIterate one(std::vector<Vec>{x});
        const ActiveSet act =
            activate_inequalities(mop, one, {trial.dx}, tol);
        ids = eq.ids[i];
        for (int id : act.ids[0])
          if (id >= mop.p) ids.push_back(id);
        step = (ids.size() == eq.ids[i].size())
                   ? trial
                   : block_solver(i, x, lambda_for_ids(maps[i], ids), ids);
      }

      const Vec lam = lambda_for_ids(maps[i], ids);
      const double t = armijo_step(mop, x, step.dx, ids, target_for(i), params);
      res.next.points[i] = x + t * step.dx;
      res.next.multipliers[i] = lam + t * step.dlambda;
      res.active.ids[i] = ids;
      res.step_sizes[i] = t;
      res.fallbacks[i] = step.fallback;
    } catch (const Error& e) {
      res.failed[i] = true;
      res.next.points[i] = x;
      res.next.multipliers[i] = iterate.multipliers[i];
      res.active.ids[i] = eq.ids[i];
      if (failures++ == 0) first_error = e.what();
    }
  }
  if (failures == mu) {
    throw Error("newton step: all " + std::to_string(mu) +
                " block solves failed; first error: " + first_error);
  }
  return res;
}

}  // namespace

StepResult matched_newton_step(const MopDefinition& mop,
                               const SetIterate& iterate,
                               const std::vector<Vec>& Z,
                               const NewtonParams& params,
                               const ActiveSet* prev_active) {
  if (static_cast<int>(Z.size()) != iterate.mu())
    throw Error("matched_newton_step: |Z| must equal mu");
  return population_step(
      mop, iterate, params, prev_active, 'M',
      [&](int i, const Vec& x, const Vec& lam, const std::vector<int>& ids) {
        return matched_newton_block(mop, x, lam, Z[i], ids);
      },
      [&](int i) {
        LineSearchTarget t;
        t.kind = LineSearchTarget::kMatched;
        t.z = Z[i];
        return t;
      });
}

StepResult matched_newton_step_with_active(const MopDefinition& mop,
                                           const SetIterate& iterate,
                                           const std::vector<Vec>& Z,
                                           const ActiveSet& active,
                                           const NewtonParams& params) {
  if (static_cast<int>(Z.size()) != iterate.mu())
    throw Error("matched_newton_step: |Z| must equal mu");
  return population_step(
      mop, iterate, params, &active, 'M',
      [&](int i, const Vec& x, const Vec& lam, const std::vector<int>& ids) {
        return matched_newton_block(mop, x, lam, Z[i], ids);
      },
      [&](int i) {
        LineSearchTarget t;
        t.kind = LineSearchTarget::kMatched;
        t.z = Z[i];
        return t;
      },
      &active);
}

StepResult delta_p_step(const MopDefinition& mop, const SetIterate& iterate,
                        const std::vector<Vec>& Z, const NewtonParams& params,
                        const ActiveSet* prev_active) {
  const int mu = iterate.mu();
  const int M = static_cast<int>(Z.size());
  std::vector<Vec> fx;
  fx.reserve(mu);
  for (const Vec& x : iterate.points) fx.push_back(mop.eval_f(x));

  NearestAssignment na = nearest_assignment(fx, Z);
  if (!na.unique)
    throw TieError("delta_p_step: nearest neighbor tie", na.ties);

  double gd2 = 0.0, igd2 = 0.0;
  for (int i = 0; i < mu; ++i) gd2 += (fx[i] - Z[na.j[i]]).squaredNorm();
  gd2 /= mu;
  for (int q = 0; q < M; ++q) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < mu; ++i)
      best = std::min(best, (Z[q] - fx[i]).squaredNorm());
    igd2 += best;
  }
  igd2 /= M;

  const bool take_gd = params.gd_branch_on_smaller_gd ? (gd2 < igd2)
                                                      : (gd2 > igd2);
  if (take_gd) {
    return population_step(
        mop, iterate, params, prev_active, 'G',
        [&](int i, const Vec& x, const Vec& lam, const std::vector<int>& ids) {
          return gd_newton_block(mop, x, lam, Z[na.j[i]], ids, mu);
        },
        [&](int i) {
          LineSearchTarget t;
          t.kind = LineSearchTarget::kMatched;
          t.z = Z[na.j[i]];
          return t;
        });
  }
  return population_step(
      mop, iterate, params, prev_active, 'I',
      [&](int i, const Vec& x, const Vec& lam, const std::vector<int>& ids) {
        std::vector<Vec> refs;
        for (int q : na.I[i]) refs.push_back(Z[q]);
        return igd_newton_block(mop, x, lam, refs, ids, M);
      },
      [&](int i) {
        LineSearchTarget t;
        if (na.m[i] == 0) {
          t.kind = LineSearchTarget::kFeasibility;
        } else {
          t.kind = LineSearchTarget::kIgd;
          for (int q : na.I[i]) t.refs.push_back(Z[q]);
        }
        return t;
      });
}

KktResidual kkt_residual(const MopDefinition& mop, const SetIterate& iterate,
                         const std::vector<Vec>& Z, const ActiveSet& active) {
  const int mu = iterate.mu();
  KktResidual r;
  r.stationarity = Vec(static_cast<Eigen::Index>(mu) * mop.n);
  std::vector<double> feas;
  for (int i = 0; i < mu; ++i) {
    const Vec& x = iterate.points[i];
    const Mat J = mop.jac_f(x);
    const Vec f = mop.eval_f(x);
    Vec s = 2.0 * J.transpose() * (f - Z[i]);
    const auto& ids = active.ids[i];
    if (!ids.empty()) {
      const Mat H = active_jacobian(mop, x, ids);
      s += H.transpose() * padded_lambda(iterate.multipliers[i], H.rows());
      const Vec hv = active_values(mop, x, ids);
      for (Eigen::Index q = 0; q < hv.size(); ++q) feas.push_back(hv[q]);
    }
    r.stationarity.segment(static_cast<Eigen::Index>(i) * mop.n, mop.n) = s;
  }
  r.feasibility = to_vec(feas);
  r.norm = std::sqrt(r.stationarity.squaredNorm() + r.feasibility.squaredNorm());
  return r;
}

void NewtonTrace::write_csv(const std::string& path) const {
  std::vector<std::vector<double>> data;
  for (const TraceRow& row : rows)
    data.push_back({static_cast<double>(row.iteration), row.gd2sq, row.igd2sq,
                    row.delta2, row.residual_norm});
  write_csv_file:
  write_csv(path, {"iteration", "gd2sq", "igd2sq", "delta2", "residual_norm"},
            data);
}

NewtonLoopResult newton_loop(const MopDefinition& mop,
                             const SetIterate& iterate0,
                             const std::vector<Vec>& Z0,
                             const std::vector<Vec>& eta, double t,
                             double tol_y, int n_iterations,
                             const NewtonParams& params) {
  const int mu = iterate0.mu();
  if (static_cast<int>(Z0.size()) != mu)
    throw Error("newton_loop: |Z| must equal mu");
  if (eta.size() != 1 && static_cast<int>(eta.size()) != mu)
    throw Error("newton_loop: eta must hold 1 or mu directions");

  NewtonLoopResult out;
  out.iterate = iterate0;
  out.Z_final = Z0;
  out.final_active = ActiveSet::equalities_only(mu, mop.p);
  // Fresh multipliers when the caller did not provide matching sizes.
  for (int i = 0; i < mu; ++i)
    if (out.iterate.multipliers[i].size() != mop.p)
      out.iterate.multipliers[i] = Vec::Zero(mop.p);

  auto record = [&](int iteration, const StepResult* step) {
    std::vector<Vec> fx;
    for (const Vec& x : out.iterate.points) fx.push_back(mop.eval_f(x));
    const IndicatorReport rep = delta_p(fx, out.Z_final, 2);
    TraceRow row;
    row.iteration = iteration;
    row.gd2sq = rep.gd2sq;
    row.igd2sq = rep.igd2sq;
    row.delta2 = rep.delta2;
    const ActiveSet& act = step ? step->active : out.final_active;
    row.residual_norm = kkt_residual(mop, out.iterate, out.Z_final, act).norm;
    if (step) {
      row.branch = step->branch;
      row.step_sizes = step->step_sizes;
      row.fallbacks = step->fallbacks;
    } else {
      row.step_sizes.assign(mu, 0.0);
      row.fallbacks.assign(mu, false);
    }
    out.trace.rows.push_back(std::move(row));
  };

  record(0, nullptr);
  for (int l = 0; l < n_iterations; ++l) {
    StepResult step;
    try {
      step = matched_newton_step(mop, out.iterate, out.Z_final, params,
                                 l == 0 ? nullptr : &out.final_active);
    } catch (const Error& e) {
      out.aborted = true;
      out.abort_reason = e.what();
      return out;
    }
    out.iterate = step.next;
    out.final_active = step.active;
    record(l + 1, &step);
    // Reachable targets are pushed further along the shift direction.
    for (int i = 0; i < mu; ++i) {
      const Vec fx = mop.eval_f(out.iterate.points[i]);
      if ((fx - out.Z_final[i]).norm() < tol_y)
        out.Z_final[i] += t * (eta.size() == 1 ? eta[0] : eta[i]);
    }
  }
  return out;
}

FullSystemStep gd_full_newton_step(const MopDefinition& mop,
                                   const SetIterate& iterate,
                                   const std::vector<Vec>& Z,
                                   const ActiveSet& active, bool include_S) {
  const int mu = iterate.mu();
  const int n = mop.n;
  Eigen::Index pa_total = 0;
  for (const auto& ids : active.ids) pa_total += static_cast<Eigen::Index>(ids.size());
  const Eigen::Index nx = static_cast<Eigen::Index>(mu) * n;

  Mat K = Mat::Zero(nx + pa_total, nx + pa_total);
  Vec rhs = Vec::Zero(nx + pa_total);
  Eigen::Index row_at = 0;
  for (int i = 0; i < mu; ++i) {
    const Vec& x = iterate.points[i];
    const auto d = mop.objective_derivatives(x);
    const Vec alpha = d.f - Z[i];
    Mat B = d.jac.transpose() * d.jac;
    for (int l = 0; l < mop.k; ++l) B += alpha[l] * d.hess[l];
    B *= 2.0 / mu;

    const auto& ids = active.ids[i];
    const Vec lam = padded_lambda(iterate.multipliers[i],
                                  static_cast<Eigen::Index>(ids.size()));
    if (include_S && !ids.empty()) {
      std::vector<Mat> Hh, Hg;
      if (mop.p > 0) {
        if (!mop.hess_h) throw Error("full system with S: hess_h missing");
        Hh = mop.hess_h(x);
      }
      for (size_t q = 0; q < ids.size(); ++q) {
        const int id = ids[q];
        if (id < mop.p) {
          B += lam[static_cast<Eigen::Index>(q)] * Hh[id];
        } else {
          if (Hg.empty()) {
            if (!mop.hess_g) throw Error("full system with S: hess_g missing");
            Hg = mop.hess_g(x);
          }
          B += lam[static_cast<Eigen::Index>(q)] * Hg[id - mop.p];
        }
      }
    }

    const Eigen::Index xi = static_cast<Eigen::Index>(i) * n;
    K.block(xi, xi, n, n) = B;
    const Mat H = active_jacobian(mop, x, ids);
    const Eigen::Index pa = H.rows();
    if (pa > 0) {
      K.block(xi, nx + row_at, n, pa) = H.transpose();
      K.block(nx + row_at, xi, pa, n) = H;
      rhs.segment(nx + row_at, pa) = -active_values(mop, x, ids);
    }
    rhs.segment(xi, n) =
        -(2.0 / mu) * d.jac.transpose() * alpha - H.transpose() * lam;
    row_at += pa;
  }

  const LinearSolveResult sol = solve_linear(K, rhs);
  FullSystemStep out;
  out.dX = sol.x.head(nx);
  out.dLambda = sol.x.tail(pa_total);
  out.fallback = sol.fallback;
  return out;
}

}  // namespace dpn
