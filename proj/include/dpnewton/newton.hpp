#pragma once

#include "dpnewton/common.hpp"
#include "dpnewton/indicators.hpp"
#include "dpnewton/mop.hpp"

#include <map>
#include <string>

namespace dpn {

struct NewtonParams {
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_halvings = 25;
  double merit_rho = 10.0;
  // Near-activity tolerance is 1e-6 * (1 + max |g| over the population).
  double activation_tol_base = 1e-6;
  // Branch convention of the general-reference-set step: take the GD step
  // when GD_2^2 < IGD_2^2 (pseudo-code reading). Flip for the prose reading.
  bool gd_branch_on_smaller_gd = true;
  // Reference-set nudge applied by the loop when a nearest-neighbor tie
  // makes the indicator non-differentiable.
  double tie_perturbation = 1e-10;
};

/// Per-individual active constraint ids: 0..p-1 are the equalities
/// (always active), p+l is inequality l.
struct ActiveSet {
  std::vector<std::vector<int>> ids;

  static ActiveSet equalities_only(int mu, int p);
  bool contains(int individual, int constraint_id) const;
};

struct KktResidual {
  Vec stationarity;  // mu*n
  Vec feasibility;   // total active rows
  double norm = 0.0;
};

struct BlockStep {
  Vec dx;
  Vec dlambda;
  bool fallback = false;          // least-squares path ran
  bool feasibility_step = false;  // pseudo-inverse step for a vanished sub-gradient
};

/// Values and Jacobian of the active constraints at x, in id order.
Vec active_values(const MopDefinition& mop, const Vec& x,
                  const std::vector<int>& ids);
Mat active_jacobian(const MopDefinition& mop, const Vec& x,
                    const std::vector<int>& ids);

double near_activity_tol(const MopDefinition& mop, const SetIterate& iterate,
                         double base = 1e-6);

/// One GD saddle-point block: solves the (2/mu)-scaled system for
/// (dx, dlambda) toward reference z.
BlockStep gd_newton_block(const MopDefinition& mop, const Vec& x,
                          const Vec& lambda, const Vec& z,
                          const std::vector<int>& active_ids, int mu);

/// One IGD block toward the attracted references; an empty set triggers the
/// pseudo-inverse feasibility step (dx = -H(x)^+ h(x), exactly zero at
/// feasible points).
BlockStep igd_newton_block(const MopDefinition& mop, const Vec& x,
                           const Vec& lambda,
                           const std::vector<Vec>& attracted_refs,
                           const std::vector<int>& active_ids, int M);

/// Matched block (mu = M = 1 scaling).
BlockStep matched_newton_block(const MopDefinition& mop, const Vec& x,
                               const Vec& lambda, const Vec& z,
                               const std::vector<int>& active_ids);

/// Inequality activation rule: an inequality joins the active set when it is
/// nearly active at the point and the trial direction would not improve it.
ActiveSet activate_inequalities(const MopDefinition& mop,
                                const SetIterate& iterate,
                                const std::vector<Vec>& directions, double tol);

struct StepResult {
  SetIterate next;
  ActiveSet active;
  std::vector<double> step_sizes;
  std::vector<bool> fallbacks;
  std::vector<bool> failed;  // frozen individuals (solve failure)
  char branch = 'M';         // 'M' matched, 'G' GD, 'I' IGD
};

/// One matched Newton step over the whole population: per individual a trial
/// solve on the equalities, inequality activation, a re-solve, and Armijo
/// backtracking on |F(x)-z_i|^2 + rho*|h_active|^2. Individuals whose solve
/// fails are frozen; only all-failed raises.
StepResult matched_newton_step(const MopDefinition& mop,
                               const SetIterate& iterate,
                               const std::vector<Vec>& Z,
                               const NewtonParams& params,
                               const ActiveSet* prev_active = nullptr);

/// Matched step with a caller-fixed active set (no activation pass).
StepResult matched_newton_step_with_active(const MopDefinition& mop,
                                           const SetIterate& iterate,
                                           const std::vector<Vec>& Z,
                                           const ActiveSet& active,
                                           const NewtonParams& params);

/// General-reference-set step: computes GD_2^2 and IGD_2^2 against Z and
/// dispatches to the GD or IGD block step per the branch convention.
StepResult delta_p_step(const MopDefinition& mop, const SetIterate& iterate,
                        const std::vector<Vec>& Z, const NewtonParams& params,
                        const ActiveSet* prev_active = nullptr);

/// KKT residual in the matched convention (stationarity of
/// sum |F(x_i)-z_i|^2 plus active-constraint feasibility).
KktResidual kkt_residual(const MopDefinition& mop, const SetIterate& iterate,
                         const std::vector<Vec>& Z, const ActiveSet& active);

struct TraceRow {
  int iteration = 0;
  double gd2sq = 0.0;
  double igd2sq = 0.0;
  double delta2 = 0.0;
  double residual_norm = 0.0;
  char branch = 'M';
  std::vector<double> step_sizes;
  std::vector<bool> fallbacks;
};

struct NewtonTrace {
  std::vector<TraceRow> rows;
  void write_csv(const std::string& path) const;
};

struct NewtonLoopResult {
  SetIterate iterate;
  NewtonTrace trace;
  std::vector<Vec> Z_final;
  ActiveSet final_active;
  bool aborted = false;
  std::string abort_reason;
};

/// The reference-update Newton loop: N_i matched steps; after each, every
/// target whose individual came within tol_y is shifted by t*eta. eta holds
/// one direction per target (or a single shared one).
NewtonLoopResult newton_loop(const MopDefinition& mop,
                             const SetIterate& iterate0,
                             const std::vector<Vec>& Z0,
                             const std::vector<Vec>& eta, double t,
                             double tol_y, int n_iterations,
                             const NewtonParams& params = {});

struct FullSystemStep {
  Vec dX;       // mu*n
  Vec dLambda;  // total active rows
  bool fallback = false;
};

/// Stacked whole-population Newton system, optionally keeping the S-term
/// (second derivatives of the active constraints). Validation path; the
/// production steps use the block systems.
FullSystemStep gd_full_newton_step(const MopDefinition& mop,
                                   const SetIterate& iterate,
                                   const std::vector<Vec>& Z,
                                   const ActiveSet& active, bool include_S);

}  // namespace dpn
