#include "dpnewton/linalg.hpp"

#include <Eigen/QR>

namespace dpn {

LinearSolveResult solve_linear(const Mat& A, const Vec& b) {
  if (A.rows() != A.cols()) throw Error("solve_linear: A must be square");
  if (A.rows() != b.size()) throw Error("solve_linear: size mismatch");
  if (!is_finite(A) || !is_finite(b))
    throw Error("solve_linear: non-finite entries");

  LinearSolveResult out;
  Eigen::FullPivLU<Mat> lu(A);
  if (lu.isInvertible()) {
    out.x = lu.solve(b);
    const double resid = (A * out.x - b).norm();
    if (resid <= 1e-10 * (1.0 + b.norm())) return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(A);
  out.x = cod.solve(b);
  out.fallback = true;
  return out;
}

QrResult qr_factor(const Mat& M) {
  const Eigen::Index k = M.rows();
  QrResult out;
  Eigen::HouseholderQR<Mat> qr(M);
  out.Q = qr.householderQ() * Mat::Identity(k, k);
  Mat full = qr.matrixQR().triangularView<Eigen::Upper>();
  out.R = full.topRows(k).leftCols(M.cols());

  const double scale = 1.0 + M.cwiseAbs().maxCoeff();
  const Eigen::Index r = std::min(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < r; ++i)
    if (std::abs(out.R(i, i)) <= 1e-12 * scale) out.rank_deficient = true;
  if (M.cols() > M.rows()) out.rank_deficient = true;
  return out;
}

}  // namespace dpn
