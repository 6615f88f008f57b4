#pragma once

#include "dpnewton/common.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace dpn {

/// Second-order truncated Taylor scalar: carries value, gradient and Hessian
/// with respect to a fixed set of n independent variables. Evaluating a
/// function built from these scalars yields exact first and second
/// derivatives in one pass, so every benchmark problem is written once and
/// its Jacobian/Hessian follow from the same formula.
class Taylor2 {
 public:
  double val = 0.0;
  Vec grad;
  Mat hess;

  Taylor2() = default;

  static Taylor2 constant(double v, int n) {
    Taylor2 t;
    t.val = v;
    t.grad = Vec::Zero(n);
    t.hess = Mat::Zero(n, n);
    return t;
  }

  static Taylor2 variable(double v, int index, int n) {
    Taylor2 t = constant(v, n);
    t.grad[index] = 1.0;
    return t;
  }

  int dim() const { return static_cast<int>(grad.size()); }
};

inline Taylor2 operator+(const Taylor2& a, const Taylor2& b) {
  Taylor2 r = a;
  r.val += b.val;
  r.grad += b.grad;
  r.hess += b.hess;
  return r;
}
inline Taylor2 operator+(const Taylor2& a, double b) {
  Taylor2 r = a;
  r.val += b;
  return r;
}
inline Taylor2 operator+(double a, const Taylor2& b) { return b + a; }

inline Taylor2 operator-(const Taylor2& a) {
  Taylor2 r = a;
  r.val = -r.val;
  r.grad = -r.grad;
  r.hess = -r.hess;
  return r;
}
inline Taylor2 operator-(const Taylor2& a, const Taylor2& b) {
  Taylor2 r = a;
  r.val -= b.val;
  r.grad -= b.grad;
  r.hess -= b.hess;
  return r;
}
inline Taylor2 operator-(const Taylor2& a, double b) {
  Taylor2 r = a;
  r.val -= b;
  return r;
}
inline Taylor2 operator-(double a, const Taylor2& b) { return -(b - a); }

inline Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
  Taylor2 r;
  r.val = a.val * b.val;
  r.grad = a.grad * b.val + b.grad * a.val;
  r.hess = a.hess * b.val + b.hess * a.val + a.grad * b.grad.transpose() +
           b.grad * a.grad.transpose();
  return r;
}
inline Taylor2 operator*(const Taylor2& a, double b) {
  Taylor2 r = a;
  r.val *= b;
  r.grad *= b;
  r.hess *= b;
  return r;
}
inline Taylor2 operator*(double a, const Taylor2& b) { return b * a; }

/// Composition with a univariate map given value and first two derivatives.
inline Taylor2 apply_univariate(const Taylor2& u, double f, double df,
                                double ddf) {
  Taylor2 r;
  r.val = f;
  r.grad = df * u.grad;
  r.hess = df * u.hess + ddf * (u.grad * u.grad.transpose());
  return r;
}

inline Taylor2 inv(const Taylor2& u) {
  const double iv = 1.0 / u.val;
  return apply_univariate(u, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline Taylor2 operator/(const Taylor2& a, const Taylor2& b) {
  return a * inv(b);
}
inline Taylor2 operator/(const Taylor2& a, double b) { return a * (1.0 / b); }
inline Taylor2 operator/(double a, const Taylor2& b) { return inv(b) * a; }

inline Taylor2 sqrt(const Taylor2& u) {
  const double s = std::sqrt(u.val);
  return apply_univariate(u, s, 0.5 / s, -0.25 / (s * u.val));
}
inline Taylor2 sin(const Taylor2& u) {
  const double s = std::sin(u.val), c = std::cos(u.val);
  return apply_univariate(u, s, c, -s);
}
inline Taylor2 cos(const Taylor2& u) {
  const double s = std::sin(u.val), c = std::cos(u.val);
  return apply_univariate(u, c, -s, -c);
}
inline Taylor2 exp(const Taylor2& u) {
  const double e = std::exp(u.val);
  return apply_univariate(u, e, e, e);
}
inline Taylor2 log(const Taylor2& u) {
  return apply_univariate(u, std::log(u.val), 1.0 / u.val,
                          -1.0 / (u.val * u.val));
}
inline Taylor2 pow(const Taylor2& u, double c) {
  const double f = std::pow(u.val, c);
  const double df = c * std::pow(u.val, c - 1.0);
  const double ddf = c * (c - 1.0) * std::pow(u.val, c - 2.0);
  return apply_univariate(u, f, df, ddf);
}
// One-sided at the kink; derivative queries use the branch at the point.
inline Taylor2 abs(const Taylor2& u) {
  return u.val >= 0.0 ? u : -u;
}
inline Taylor2 sqr(const Taylor2& u) { return u * u; }
inline double sqr(double u) { return u * u; }

inline bool operator<(const Taylor2& a, double b) { return a.val < b; }
inline bool operator>(const Taylor2& a, double b) { return a.val > b; }

inline double value_of(double x) { return x; }
inline double value_of(const Taylor2& x) { return x.val; }

template <class S>
S make_scalar(double v, int n);
template <>
inline double make_scalar<double>(double v, int) { return v; }
template <>
inline Taylor2 make_scalar<Taylor2>(double v, int n) {
  return Taylor2::constant(v, n);
}

struct AdResult {
  Vec value;                // f(x), size k
  Mat jacobian;             // k x n
  std::vector<Mat> hessians;  // k matrices of n x n
};

/// Evaluates a vector map written over Taylor2 scalars and unpacks value,
/// Jacobian and all component Hessians.
inline AdResult ad_eval(
    const std::function<std::vector<Taylor2>(const std::vector<Taylor2>&)>& fn,
    const Vec& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Taylor2> in(n);
  for (int i = 0; i < n; ++i) in[i] = Taylor2::variable(x[i], i, n);
  const std::vector<Taylor2> out = fn(in);
  const int k = static_cast<int>(out.size());
  AdResult r;
  r.value = Vec(k);
  r.jacobian = Mat(k, n);
  r.hessians.resize(k);
  for (int i = 0; i < k; ++i) {
    r.value[i] = out[i].val;
    r.jacobian.row(i) = out[i].grad.transpose();
    r.hessians[i] = out[i].hess;
  }
  return r;
}

}  // namespace dpn
