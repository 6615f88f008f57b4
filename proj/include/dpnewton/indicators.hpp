#pragma once

#include "dpnewton/common.hpp"
#include "dpnewton/mop.hpp"

namespace dpn {

/// Nearest-neighbor index structure between a population image F(X) and a
/// reference set Z. j[i] is the reference closest to population element i
/// (GD direction); I[l] collects the references whose closest population
/// element is l (IGD direction), with counts m[l].
struct NearestAssignment {
  std::vector<int> j;
  std::vector<std::vector<int>> I;
  std::vector<int> m;
  bool unique = true;
  std::vector<std::pair<int, int>> ties;  // (element, tied candidate)
};

NearestAssignment nearest_assignment(const std::vector<Vec>& fx,
                                     const std::vector<Vec>& Z,
                                     double tie_tol = 1e-12);

struct IndicatorReport {
  double gd2sq = 0.0;
  double igd2sq = 0.0;
  double delta2 = 0.0;
  // Values for the requested p (equal to the p=2 values when p == 2).
  int p = 2;
  double gdp = 0.0;
  double igdp = 0.0;
  double deltap = 0.0;
  NearestAssignment assignment;
};

/// Averaged Hausdorff distance between two finite sets. p=2 is the fast
/// path with full assignment structure; other p are value-only.
IndicatorReport delta_p(const std::vector<Vec>& A, const std::vector<Vec>& B,
                        int p = 2);

struct GradientResult {
  Vec grad;  // stacked, mu*n
  NearestAssignment assignment;
};

struct BlockDiag {
  std::vector<Mat> blocks;
  Mat dense() const;
};

/// Gradient of GD_2^2 w.r.t. the stacked decision variable; block i is
/// (2/mu) J(x_i)^T (F(x_i) - z_{j_i}). Throws TieError when a nearest
/// reference is not unique.
GradientResult gd2sq_gradient(const MopDefinition& mop,
                              const SetIterate& iterate,
                              const std::vector<Vec>& Z);

BlockDiag gd2sq_hessian(const MopDefinition& mop, const SetIterate& iterate,
                        const std::vector<Vec>& Z);

/// Gradient of IGD_2^2; block l is (2/M) J(x_l)^T (m_l F(x_l) - sum of
/// attracted references), zero for elements attracting none.
GradientResult igd2sq_gradient(const MopDefinition& mop,
                               const SetIterate& iterate,
                               const std::vector<Vec>& Z);

BlockDiag igd2sq_hessian(const MopDefinition& mop, const SetIterate& iterate,
                         const std::vector<Vec>& Z);

}  // namespace dpn
