#pragma once

#include "dpnewton/common.hpp"

namespace dpn {

struct LinearSolveResult {
  Vec x;
  bool fallback = false;  // set when the minimum-norm least-squares path ran
};

/// Solves Ax = b for square A. Well-conditioned systems go through an LU
/// factorization whose solution is residual-checked; anything else falls
/// back to the minimum-norm least-squares solution and flags it.
LinearSolveResult solve_linear(const Mat& A, const Vec& b);

struct QrResult {
  Mat Q;  // k x k orthogonal
  Mat R;  // k x (k-1) upper triangular
  bool rank_deficient = false;
};

/// Householder QR of a k x (k-1) matrix. With full column rank the last
/// column of Q spans the orthogonal complement of the column space.
QrResult qr_factor(const Mat& M);

}  // namespace dpn
