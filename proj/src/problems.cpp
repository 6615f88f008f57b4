#include "dpnewton/problems.hpp"

#include "dpnewton/autodiff.hpp"
#include "dpnewton/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace dpn {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <class S>
using SV = std::vector<S>;

template <class S>
S zero_like(const SV<S>& x) {
  return make_scalar<S>(0.0, static_cast<int>(x.size()));
}

// ---------------------------------------------------------------------------
// ZDT family
// ---------------------------------------------------------------------------

template <class S>
SV<S> zdt1_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = 1; i < n; ++i) sum = sum + x[i];
  const S g = 1.0 + 9.0 * sum / (n - 1.0);
  const S f1 = x[0];
  return {f1, g * (1.0 - sqrt(f1 / g))};
}

template <class S>
SV<S> zdt2_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = 1; i < n; ++i) sum = sum + x[i];
  const S g = 1.0 + 9.0 * sum / (n - 1.0);
  const S f1 = x[0];
  return {f1, g * (1.0 - sqr(f1 / g))};
}

template <class S>
SV<S> zdt3_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = 1; i < n; ++i) sum = sum + x[i];
  const S g = 1.0 + 9.0 * sum / (n - 1.0);
  const S f1 = x[0];
  return {f1, g * (1.0 - sqrt(f1 / g) - f1 / g * sin(10.0 * kPi * f1))};
}

template <class S>
SV<S> zdt4_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = 1; i < n; ++i)
    sum = sum + (sqr(x[i]) - 10.0 * cos(4.0 * kPi * x[i]));
  const S g = 1.0 + 10.0 * (n - 1.0) + sum;
  const S f1 = x[0];
  return {f1, g * (1.0 - sqrt(f1 / g))};
}

template <class S>
SV<S> zdt6_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  const S s6 = sin(6.0 * kPi * x[0]);
  const S f1 = 1.0 - exp(-4.0 * x[0]) * sqr(s6) * sqr(s6) * sqr(s6);
  S sum = zero_like(x);
  for (int i = 1; i < n; ++i) sum = sum + x[i];
  const S g = 1.0 + 9.0 * pow(sum / (n - 1.0), 0.25);
  return {f1, g * (1.0 - sqr(f1 / g))};
}

// ---------------------------------------------------------------------------
// DTLZ family (k objectives, tail of n-k+1 distance variables)
// ---------------------------------------------------------------------------

template <class S>
S dtlz1_g(const SV<S>& x, int k) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = k - 1; i < n; ++i)
    sum = sum + (sqr(x[i] - 0.5) - cos(20.0 * kPi * (x[i] - 0.5)));
  return 100.0 * ((n - k + 1.0) + sum);
}

template <class S>
S dtlz2_g(const SV<S>& x, int k) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = k - 1; i < n; ++i) sum = sum + sqr(x[i] - 0.5);
  return sum;
}

template <class S>
SV<S> dtlz1_f(const SV<S>& x, int k) {
  const S g = dtlz1_g(x, k);
  SV<S> f;
  for (int i = 0; i < k; ++i) {
    S v = 0.5 * (1.0 + g);
    for (int j = 0; j < k - 1 - i; ++j) v = v * x[j];
    if (i > 0) v = v * (1.0 - x[k - 1 - i]);
    f.push_back(v);
  }
  return f;
}

// Angle-product objectives shared by DTLZ2-6; theta supplies the angles.
template <class S>
SV<S> dtlz_spherical(const SV<S>& theta, const S& g, int k) {
  SV<S> f;
  for (int i = 0; i < k; ++i) {
    S v = 1.0 + g;
    for (int j = 0; j < k - 1 - i; ++j) v = v * cos(theta[j] * kPi / 2.0);
    if (i > 0) v = v * sin(theta[k - 1 - i] * kPi / 2.0);
    f.push_back(v);
  }
  return f;
}

template <class S>
SV<S> dtlz2_f(const SV<S>& x, int k) {
  const S g = dtlz2_g(x, k);
  SV<S> th(x.begin(), x.begin() + (k - 1));
  return dtlz_spherical(th, g, k);
}

template <class S>
SV<S> dtlz3_f(const SV<S>& x, int k) {
  const S g = dtlz1_g(x, k);
  SV<S> th(x.begin(), x.begin() + (k - 1));
  return dtlz_spherical(th, g, k);
}

template <class S>
SV<S> dtlz4_f(const SV<S>& x, int k) {
  const S g = dtlz2_g(x, k);
  SV<S> th;
  for (int j = 0; j < k - 1; ++j) th.push_back(pow(x[j], 100.0));
  return dtlz_spherical(th, g, k);
}

template <class S>
SV<S> dtlz5_core(const SV<S>& x, const S& g, int k) {
  SV<S> th;
  th.push_back(x[0]);
  for (int j = 1; j < k - 1; ++j)
    th.push_back((1.0 + 2.0 * g * x[j]) / (2.0 * (1.0 + g)));
  return dtlz_spherical(th, g, k);
}

template <class S>
SV<S> dtlz5_f(const SV<S>& x, int k) {
  const S g = dtlz2_g(x, k);
  return dtlz5_core(x, g, k);
}

template <class S>
SV<S> dtlz6_f(const SV<S>& x, int k) {
  const int n = static_cast<int>(x.size());
  S g = zero_like(x);
  for (int i = k - 1; i < n; ++i) g = g + pow(x[i], 0.1);
  return dtlz5_core(x, g, k);
}

template <class S>
SV<S> dtlz7_f(const SV<S>& x, int k) {
  const int n = static_cast<int>(x.size());
  S sum = zero_like(x);
  for (int i = k - 1; i < n; ++i) sum = sum + x[i];
  const S g = 1.0 + 9.0 / (n - k + 1.0) * sum;
  SV<S> f(x.begin(), x.begin() + (k - 1));
  S h = zero_like(x) + static_cast<double>(k);
  for (int i = 0; i < k - 1; ++i)
    h = h - f[i] / (1.0 + g) * (1.0 + sin(3.0 * kPi * f[i]));
  f.push_back((1.0 + g) * h);
  return f;
}

// Inverted DTLZ variants: objectives mirrored about the g-dependent ideal.
template <class S>
SV<S> idtlz1_f(const SV<S>& x, int k) {
  const S g = dtlz1_g(x, k);
  SV<S> f = dtlz1_f(x, k);
  for (int i = 0; i < k; ++i) f[i] = 0.5 * (1.0 + g) - f[i];
  return f;
}

template <class S>
SV<S> idtlz2_f(const SV<S>& x, int k) {
  const S g = dtlz2_g(x, k);
  SV<S> f = dtlz2_f(x, k);
  for (int i = 0; i < k; ++i) f[i] = (1.0 + g) - f[i];
  return f;
}

template <class S>
SV<S> idtlz3_f(const SV<S>& x, int k) {
  const S g = dtlz1_g(x, k);
  SV<S> f = dtlz3_f(x, k);
  for (int i = 0; i < k; ++i) f[i] = (1.0 + g) - f[i];
  return f;
}

template <class S>
SV<S> idtlz4_f(const SV<S>& x, int k) {
  const S g = dtlz2_g(x, k);
  SV<S> f = dtlz4_f(x, k);
  for (int i = 0; i < k; ++i) f[i] = (1.0 + g) - f[i];
  return f;
}

// ---------------------------------------------------------------------------
// CF family (CEC'09 constrained suite). 1-based variable index j mirrors the
// standard definitions; J1/J2(/J3) split the tail by parity (mod 3 for k=3).
// ---------------------------------------------------------------------------

template <class S>
S cf_h_kink(const S& t) {
  // |t| below the breakpoint, shifted parabola above it
  if (value_of(t) < 1.5 * (1.0 - std::sqrt(0.5))) return abs(t);
  return 0.125 + sqr(t - 1.0);
}

template <class S>
S signed_sqrt(const S& u) {
  const double v = value_of(u);
  if (v > 0.0) return sqrt(u);
  if (v < 0.0) return -sqrt(-u);
  return u * 0.0;
}

template <class S>
SV<S> cf1_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  int c1 = 0, c2 = 0;
  for (int j = 2; j <= n; ++j) {
    const S y = x[j - 1] - pow(x[0], 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)));
    if (j % 2 == 1) { s1 = s1 + sqr(y); ++c1; }
    else { s2 = s2 + sqr(y); ++c2; }
  }
  return {x[0] + 2.0 / c1 * s1, 1.0 - x[0] + 2.0 / c2 * s2};
}

template <class S>
SV<S> cf1_g(const SV<S>& x) {
  const SV<S> f = cf1_f(x);
  const S c = f[0] + f[1] - abs(sin(10.0 * kPi * (f[0] - f[1] + 1.0))) - 1.0;
  return {-c};
}

template <class S>
SV<S> cf2_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  int c1 = 0, c2 = 0;
  for (int j = 2; j <= n; ++j) {
    if (j % 2 == 1) {
      const S y = x[j - 1] - sin(6.0 * kPi * x[0] + j * kPi / n);
      s1 = s1 + sqr(y);
      ++c1;
    } else {
      const S y = x[j - 1] - cos(6.0 * kPi * x[0] + j * kPi / n);
      s2 = s2 + sqr(y);
      ++c2;
    }
  }
  return {x[0] + 2.0 / c1 * s1, 1.0 - sqrt(x[0]) + 2.0 / c2 * s2};
}

template <class S>
SV<S> cf2_g(const SV<S>& x) {
  const SV<S> f = cf2_f(x);
  const S t = f[1] + sqrt(f[0]) - sin(2.0 * kPi * (sqrt(f[0]) - f[1] + 1.0)) - 1.0;
  return {-(t / (1.0 + exp(4.0 * abs(t))))};
}

template <class S>
SV<S> cf3_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  S p1 = zero_like(x) + 1.0, p2 = zero_like(x) + 1.0;
  int c1 = 0, c2 = 0;
  for (int j = 2; j <= n; ++j) {
    const S y = x[j - 1] - sin(6.0 * kPi * x[0] + j * kPi / n);
    if (j % 2 == 1) {
      s1 = s1 + sqr(y);
      p1 = p1 * cos(20.0 * y * kPi / std::sqrt(static_cast<double>(j)));
      ++c1;
    } else {
      s2 = s2 + sqr(y);
      p2 = p2 * cos(20.0 * y * kPi / std::sqrt(static_cast<double>(j)));
      ++c2;
    }
  }
  return {x[0] + 2.0 / c1 * (4.0 * s1 - 2.0 * p1 + 2.0),
          1.0 - sqr(x[0]) + 2.0 / c2 * (4.0 * s2 - 2.0 * p2 + 2.0)};
}

template <class S>
SV<S> cf3_g(const SV<S>& x) {
  const SV<S> f = cf3_f(x);
  const S c = f[1] + sqr(f[0]) - sin(2.0 * kPi * (sqr(f[0]) - f[1] + 1.0)) - 1.0;
  return {-c};
}

template <class S>
SV<S> cf4_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  for (int j = 2; j <= n; ++j) {
    const S y = x[j - 1] - sin(6.0 * kPi * x[0] + j * kPi / n);
    if (j % 2 == 1) s1 = s1 + sqr(y);
    else if (j == 2) s2 = s2 + cf_h_kink(y);
    else s2 = s2 + sqr(y);
  }
  return {x[0] + s1, 1.0 - x[0] + s2};
}

template <class S>
SV<S> cf4_g(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  const S t = x[1] - sin(6.0 * kPi * x[0] + 2.0 * kPi / n) - 0.5 * x[0] + 0.25;
  return {-(t / (1.0 + exp(4.0 * abs(t))))};
}

template <class S>
SV<S> cf5_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  for (int j = 2; j <= n; ++j) {
    if (j % 2 == 1) {
      const S y = x[j - 1] - 0.8 * x[0] * cos(6.0 * kPi * x[0] + j * kPi / n);
      s1 = s1 + (2.0 * sqr(y) - cos(4.0 * kPi * y) + 1.0);
    } else {
      const S y = x[j - 1] - 0.8 * x[0] * sin(6.0 * kPi * x[0] + j * kPi / n);
      if (j == 2) s2 = s2 + cf_h_kink(y);
      else s2 = s2 + (2.0 * sqr(y) - cos(4.0 * kPi * y) + 1.0);
    }
  }
  return {x[0] + s1, 1.0 - x[0] + s2};
}

template <class S>
SV<S> cf5_g(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  const S c =
      x[1] - 0.8 * x[0] * sin(6.0 * kPi * x[0] + 2.0 * kPi / n) - 0.5 * x[0] + 0.25;
  return {-c};
}

template <class S>
SV<S> cf6_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  for (int j = 2; j <= n; ++j) {
    if (j % 2 == 1) {
      const S y = x[j - 1] - 0.8 * x[0] * cos(6.0 * kPi * x[0] + j * kPi / n);
      s1 = s1 + sqr(y);
    } else {
      const S y = x[j - 1] - 0.8 * x[0] * sin(6.0 * kPi * x[0] + j * kPi / n);
      s2 = s2 + sqr(y);
    }
  }
  return {x[0] + s1, sqr(1.0 - x[0]) + s2};
}

template <class S>
SV<S> cf6_g(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  const S one_minus = 1.0 - x[0];
  const S c1 = x[1] - 0.8 * x[0] * sin(6.0 * kPi * x[0] + 2.0 * kPi / n) -
               signed_sqrt(0.5 * one_minus - sqr(one_minus));
  const S c2 = x[3] - 0.8 * x[0] * sin(6.0 * kPi * x[0] + 4.0 * kPi / n) -
               signed_sqrt(0.25 * sqrt(one_minus) - 0.5 * one_minus);
  return {-c1, -c2};
}

template <class S>
SV<S> cf7_f(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x);
  for (int j = 2; j <= n; ++j) {
    if (j % 2 == 1) {
      const S y = x[j - 1] - cos(6.0 * kPi * x[0] + j * kPi / n);
      s1 = s1 + (2.0 * sqr(y) - cos(4.0 * kPi * y) + 1.0);
    } else {
      const S y = x[j - 1] - sin(6.0 * kPi * x[0] + j * kPi / n);
      if (j == 2 || j == 4) s2 = s2 + sqr(y);
      else s2 = s2 + (2.0 * sqr(y) - cos(4.0 * kPi * y) + 1.0);
    }
  }
  return {x[0] + s1, sqr(1.0 - x[0]) + s2};
}

template <class S>
SV<S> cf7_g(const SV<S>& x) {
  const int n = static_cast<int>(x.size());
  const S one_minus = 1.0 - x[0];
  const S c1 = x[1] - sin(6.0 * kPi * x[0] + 2.0 * kPi / n) -
               signed_sqrt(0.5 * one_minus - sqr(one_minus));
  const S c2 = x[3] - sin(6.0 * kPi * x[0] + 4.0 * kPi / n) -
               signed_sqrt(0.25 * sqrt(one_minus) - 0.5 * one_minus);
  return {-c1, -c2};
}

template <class S>
SV<S> cf8_base(const SV<S>& x, int variant) {
  const int n = static_cast<int>(x.size());
  S s1 = zero_like(x), s2 = zero_like(x), s3 = zero_like(x);
  int c1 = 0, c2 = 0, c3 = 0;
  for (int j = 3; j <= n; ++j) {
    const S y = x[j - 1] - 2.0 * x[1] * sin(2.0 * kPi * x[0] + j * kPi / n);
    const S term = (variant == 10) ? (4.0 * sqr(y) - cos(8.0 * kPi * y) + 1.0)
                                   : sqr(y);
    if (j % 3 == 1) { s1 = s1 + term; ++c1; }
    else if (j % 3 == 2) { s2 = s2 + term; ++c2; }
    else { s3 = s3 + term; ++c3; }
  }
  return {cos(0.5 * kPi * x[0]) * cos(0.5 * kPi * x[1]) + 2.0 / c1 * s1,
          cos(0.5 * kPi * x[0]) * sin(0.5 * kPi * x[1]) + 2.0 / c2 * s2,
          sin(0.5 * kPi * x[0]) + 2.0 / c3 * s3};
}

template <class S>
SV<S> cf8to10_g(const SV<S>& x, int variant) {
  const SV<S> f = cf8_base(x, variant);
  S denom = 1.0 - sqr(f[2]);
  if (value_of(denom) < 1e-12) denom = zero_like(x) + 1e-12;
  const S ratio = (sqr(f[0]) + sqr(f[1])) / denom;
  const S arg = (sqr(f[0]) - sqr(f[1])) / denom + 1.0;
  if (variant == 8) return {-(ratio - 4.0 * abs(sin(2.0 * kPi * arg)) - 1.0)};
  const double a = (variant == 9) ? 3.0 : 1.0;
  return {-(ratio - a * sin(2.0 * kPi * arg) - 1.0)};
}

// ---------------------------------------------------------------------------
// CONV4-2F: piecewise convex quadratics, two front components
// ---------------------------------------------------------------------------

template <class S>
SV<S> conv4_2f_f(const SV<S>& x) {
  static const double a[4][4] = {
      {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  // sigma = phi4 - phi1 with phi_i the squared distances among the a's
  static const double sigma[4] = {2.0, 0.0, 0.0, -2.0};
  bool negative_branch = true;
  for (const S& xi : x)
    if (!(value_of(xi) < 0.0)) negative_branch = false;
  SV<S> f;
  for (int i = 0; i < 4; ++i) {
    S v = zero_like(x);
    for (int d = 0; d < 4; ++d) {
      const S diff = negative_branch ? (x[d] + 1.0 - a[i][d]) : (x[d] - a[i][d]);
      v = v + sqr(diff);
    }
    if (negative_branch) v = v - 3.5 * sigma[i];
    f.push_back(v);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Registry and wiring
// ---------------------------------------------------------------------------

using EvalD = std::function<SV<double>(const SV<double>&)>;
using EvalT = std::function<SV<Taylor2>(const SV<Taylor2>&)>;

struct ProblemEntry {
  BenchmarkSpec spec;
  EvalD f_d;
  EvalT f_t;
  EvalD g_d;  // native inequalities, empty when none
  EvalT g_t;
  std::function<void(int, Vec&, Vec&)> bounds;
};

void box01(int n, Vec& lo, Vec& up) {
  lo = Vec::Zero(n);
  up = Vec::Ones(n);
}

std::function<void(int, Vec&, Vec&)> cf_bounds(int head, double tail_lo,
                                               double tail_up) {
  return [head, tail_lo, tail_up](int n, Vec& lo, Vec& up) {
    lo = Vec::Constant(n, tail_lo);
    up = Vec::Constant(n, tail_up);
    for (int i = 0; i < head; ++i) {
      lo[i] = 0.0;
      up[i] = 1.0;
    }
  };
}

template <class Fd, class Ft>
ProblemEntry entry(BenchmarkSpec spec, Fd fd, Ft ft,
                   std::function<void(int, Vec&, Vec&)> bounds) {
  ProblemEntry e;
  e.spec = std::move(spec);
  e.f_d = fd;
  e.f_t = ft;
  e.bounds = std::move(bounds);
  return e;
}

const std::map<std::string, ProblemEntry>& registry() {
  static const std::map<std::string, ProblemEntry> reg = [] {
    std::map<std::string, ProblemEntry> r;
    auto add = [&r](ProblemEntry e) { r[e.spec.id] = std::move(e); };

    add(entry({"zdt1", 30, 2, 0, false, 2}, zdt1_f<double>, zdt1_f<Taylor2>, box01));
    add(entry({"zdt2", 30, 2, 0, false, 2}, zdt2_f<double>, zdt2_f<Taylor2>, box01));
    add(entry({"zdt3", 30, 2, 0, false, 2}, zdt3_f<double>, zdt3_f<Taylor2>, box01));
    add(entry({"zdt4", 10, 2, 0, false, 2}, zdt4_f<double>, zdt4_f<Taylor2>, box01));
    add(entry({"zdt6", 10, 2, 0, false, 2}, zdt6_f<double>, zdt6_f<Taylor2>, box01));

    auto add_dtlz = [&](const std::string& id, int def_n, auto fn) {
      const int k = 3;
      add(entry({id, def_n, k, 0, false, k},
                [fn, k](const SV<double>& x) { return fn(x, k); },
                [fn, k](const SV<Taylor2>& x) { return fn(x, k); }, box01));
    };
    add_dtlz("dtlz1", 7, [](const auto& x, int k) { return dtlz1_f(x, k); });
    add_dtlz("dtlz2", 10, [](const auto& x, int k) { return dtlz2_f(x, k); });
    add_dtlz("dtlz3", 10, [](const auto& x, int k) { return dtlz3_f(x, k); });
    add_dtlz("dtlz4", 10, [](const auto& x, int k) { return dtlz4_f(x, k); });
    add_dtlz("dtlz5", 10, [](const auto& x, int k) { return dtlz5_f(x, k); });
    add_dtlz("dtlz6", 10, [](const auto& x, int k) { return dtlz6_f(x, k); });
    add_dtlz("dtlz7", 10, [](const auto& x, int k) { return dtlz7_f(x, k); });
    add_dtlz("idtlz1", 11, [](const auto& x, int k) { return idtlz1_f(x, k); });
    add_dtlz("idtlz2", 11, [](const auto& x, int k) { return idtlz2_f(x, k); });
    add_dtlz("idtlz3", 11, [](const auto& x, int k) { return idtlz3_f(x, k); });
    add_dtlz("idtlz4", 11, [](const auto& x, int k) { return idtlz4_f(x, k); });

    auto add_cf2obj = [&](const std::string& id, auto fn, auto gn, int n_g,
                          double tlo, double tup) {
      ProblemEntry e = entry({id, 10, 2, n_g, false, 5},
                             [fn](const SV<double>& x) { return fn(x); },
                             [fn](const SV<Taylor2>& x) { return fn(x); },
                             cf_bounds(1, tlo, tup));
      e.g_d = [gn](const SV<double>& x) { return gn(x); };
      e.g_t = [gn](const SV<Taylor2>& x) { return gn(x); };
      add(std::move(e));
    };
    add_cf2obj("cf1", [](const auto& x) { return cf1_f(x); },
               [](const auto& x) { return cf1_g(x); }, 1, 0.0, 1.0);
    add_cf2obj("cf2", [](const auto& x) { return cf2_f(x); },
               [](const auto& x) { return cf2_g(x); }, 1, -1.0, 1.0);
    add_cf2obj("cf3", [](const auto& x) { return cf3_f(x); },
               [](const auto& x) { return cf3_g(x); }, 1, -2.0, 2.0);
    add_cf2obj("cf4", [](const auto& x) { return cf4_f(x); },
               [](const auto& x) { return cf4_g(x); }, 1, -2.0, 2.0);
    add_cf2obj("cf5", [](const auto& x) { return cf5_f(x); },
               [](const auto& x) { return cf5_g(x); }, 1, -2.0, 2.0);
    add_cf2obj("cf6", [](const auto& x) { return cf6_f(x); },
               [](const auto& x) { return cf6_g(x); }, 2, -2.0, 2.0);
    add_cf2obj("cf7", [](const auto& x) { return cf7_f(x); },
               [](const auto& x) { return cf7_g(x); }, 2, -2.0, 2.0);

    auto add_cf3obj = [&](const std::string& id, int variant, double bound) {
      ProblemEntry e = entry(
          {id, 10, 3, 1, false, 6},
          [variant](const SV<double>& x) { return cf8_base(x, variant); },
          [variant](const SV<Taylor2>& x) { return cf8_base(x, variant); },
          cf_bounds(2, -bound, bound));
      e.g_d = [variant](const SV<double>& x) { return cf8to10_g(x, variant); };
      e.g_t = [variant](const SV<Taylor2>& x) { return cf8to10_g(x, variant); };
      add(std::move(e));
    };
    add_cf3obj("cf8", 8, 4.0);
    add_cf3obj("cf9", 9, 2.0);
    add_cf3obj("cf10", 10, 2.0);

    {
      ProblemEntry e = entry({"conv4_2f", 4, 4, 0, true, 4},
                             conv4_2f_f<double>, conv4_2f_f<Taylor2>,
                             [](int n, Vec& lo, Vec& up) {
                               lo = Vec::Constant(n, -3.0);
                               up = Vec::Constant(n, 3.0);
                             });
      add(std::move(e));
    }
    return r;
  }();
  return reg;
}

const ProblemEntry& lookup(const std::string& id) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) {
    std::ostringstream os;
    os << "unknown problem id '" << id << "'; known:";
    for (const auto& [known, _] : reg) os << " " << known;
    throw Error(os.str());
  }
  return it->second;
}

}  // namespace

std::vector<std::string> list_problems() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : registry()) ids.push_back(id);
  return ids;
}

const BenchmarkSpec& benchmark_spec(const std::string& id) {
  return lookup(id).spec;
}

MopDefinition make_problem(const std::string& id,
                           const ProblemOverrides& overrides) {
  const ProblemEntry& e = lookup(id);
  MopDefinition def;
  def.id = id;
  def.k = e.spec.k;
  def.n = overrides.n.value_or(e.spec.default_n);
  if (e.spec.n_fixed && def.n != e.spec.default_n)
    throw Error("problem '" + id + "' has fixed dimension n=" +
                std::to_string(e.spec.default_n));
  if (def.n < e.spec.min_n)
    throw Error("problem '" + id + "' needs n >= " +
                std::to_string(e.spec.min_n));
  def.p = 0;
  def.m = e.spec.native_inequalities;
  e.bounds(def.n, def.lower, def.upper);

  const EvalD fd = e.f_d;
  const EvalT ft = e.f_t;
  def.eval_f = [fd](const Vec& x) { return to_vec(fd(to_std(x))); };
  def.derivs_f = [ft](const Vec& x) {
    const AdResult r = ad_eval([&ft](const SV<Taylor2>& in) { return ft(in); }, x);
    return MopDefinition::Derivs{r.value, r.jacobian, r.hessians};
  };
  def.jac_f = [def](const Vec& x) { return def.derivs_f(x).jac; };
  def.hess_f = [def](const Vec& x) { return def.derivs_f(x).hess; };

  if (def.m > 0) {
    const EvalD gd = e.g_d;
    const EvalT gt = e.g_t;
    def.eval_g = [gd](const Vec& x) { return to_vec(gd(to_std(x))); };
    def.jac_g = [gt](const Vec& x) {
      return ad_eval([&gt](const SV<Taylor2>& in) { return gt(in); }, x).jacobian;
    };
    def.hess_g = [gt](const Vec& x) {
      return ad_eval([&gt](const SV<Taylor2>& in) { return gt(in); }, x).hessians;
    };
  }
  def.validate();
  return def;
}

// ---------------------------------------------------------------------------
// True-front samplers
// ---------------------------------------------------------------------------

namespace {

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < count; ++i) v[i] = a + (b - a) * i / (count - 1.0);
  return v;
}

// Resample a polyline (ordered points) to `count` arc-length-uniform points.
std::vector<Vec> arc_resample(const std::vector<Vec>& poly, int count) {
  if (poly.size() == 1 || count == 1) return {poly.front()};
  std::vector<double> cum(poly.size(), 0.0);
  for (size_t i = 1; i < poly.size(); ++i)
    cum[i] = cum[i - 1] + (poly[i] - poly[i - 1]).norm();
  const double total = cum.back();
  std::vector<Vec> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    const double target = total * s / (count - 1.0);
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const size_t hi = std::min(poly.size() - 1,
                               static_cast<size_t>(it - cum.begin()));
    const size_t lo = hi == 0 ? 0 : hi - 1;
    const double seg = cum[hi] - cum[lo];
    const double w = seg > 0.0 ? (target - cum[lo]) / seg : 0.0;
    out.push_back(poly[lo] + w * (poly[hi] - poly[lo]));
  }
  return out;
}

std::vector<Vec> curve_front(const std::function<Vec(double)>& param, double a,
                             double b, int count) {
  std::vector<Vec> dense;
  const int grid = std::max(4 * count, 4000);
  dense.reserve(grid);
  for (double t : linspace(a, b, grid)) dense.push_back(param(t));
  return arc_resample(dense, count);
}

// Non-dominated filter; exact duplicates are collapsed.
std::vector<Vec> nondominated_filter(std::vector<Vec> pts) {
  if (pts.empty()) return pts;
  const int k = static_cast<int>(pts[0].size());
  if (k == 2) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
      return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    std::vector<Vec> out;
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& p : pts) {
      if (p[1] < best) {
        out.push_back(p);
        best = p[1];
      }
    }
    return out;
  }
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a.sum() < b.sum();
  });
  std::vector<Vec> archive;
  for (const Vec& p : pts) {
    bool dominated = false;
    for (const Vec& a : archive) {
      if ((a.array() <= p.array()).all()) {  // covers duplicates as well
        dominated = true;
        break;
      }
    }
    if (!dominated) archive.push_back(p);
  }
  return archive;
}

std::vector<Vec> thin(std::vector<Vec> pts, int count, std::uint64_t seed) {
  const int n = static_cast<int>(pts.size());
  if (n <= count) return pts;
  Rng rng(seed);
  // partial Fisher-Yates over the index range
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> uni(i, n - 1);
    std::swap(idx[i], idx[uni(rng)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<Vec> out;
  out.reserve(count);
  for (int i : idx) out.push_back(pts[i]);
  return out;
}

std::vector<Vec> simplex_front(int k, double total, int count,
                               std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<double> cuts(k - 1);
    for (double& c : cuts) c = uni(rng);
    std::sort(cuts.begin(), cuts.end());
    Vec f(k);
    double prev = 0.0;
    for (int i = 0; i < k - 1; ++i) {
      f[i] = (cuts[i] - prev) * total;
      prev = cuts[i];
    }
    f[k - 1] = (1.0 - prev) * total;
    out.push_back(f);
  }
  return out;
}

std::vector<Vec> sphere_front(int k, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    Vec f(k);
    for (int i = 0; i < k; ++i) f[i] = std::abs(gauss(rng));
    f /= f.norm();
    out.push_back(f);
  }
  return out;
}

double zdt6_f1_min() {
  static const double value = [] {
    double best = 1.0;
    for (double x : linspace(0.0, 1.0, 1000001)) {
      const double s = std::sin(6.0 * kPi * x);
      const double f1 = 1.0 - std::exp(-4.0 * x) * std::pow(s, 6);
      best = std::min(best, f1);
    }
    return best;
  }();
  return value;
}

// ZDT3: non-dominated part of the parametric curve, kept arc by arc.
std::vector<Vec> zdt3_front(int count) {
  const int grid = 200001;
  std::vector<Vec> curve;
  curve.reserve(grid);
  for (double f1 : linspace(0.0, 1.0, grid)) {
    const double f2 = 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1);
    curve.push_back(Vec{{f1, f2}});
  }
  const std::vector<Vec> nd = nondominated_filter(curve);
  // split into arcs at parameter gaps
  const double step = 1.0 / (grid - 1.0);
  std::vector<std::vector<Vec>> arcs;
  for (const Vec& p : nd) {
    if (arcs.empty() || p[0] - arcs.back().back()[0] > 3.0 * step)
      arcs.push_back({});
    arcs.back().push_back(p);
  }
  std::vector<double> lengths;
  double total = 0.0;
  for (const auto& arc : arcs) {
    double len = 0.0;
    for (size_t i = 1; i < arc.size(); ++i) len += (arc[i] - arc[i - 1]).norm();
    lengths.push_back(len);
    total += len;
  }
  std::vector<Vec> out;
  for (size_t a = 0; a < arcs.size(); ++a) {
    int na = std::max(2, static_cast<int>(std::lround(count * lengths[a] / total)));
    if (static_cast<int>(arcs.size()) == 1) na = count;
    for (Vec& p : arc_resample(arcs[a], na)) out.push_back(std::move(p));
  }
  return out;
}

// Dense candidate fronts for the grid-filtered problems.
std::vector<Vec> dense_front(const std::string& id) {
  std::vector<Vec> cand;
  auto push2 = [&cand](double f1, double f2) { cand.push_back(Vec{{f1, f2}}); };

  if (id == "dtlz7") {
    const int g2 = 320;
    for (double x1 : linspace(0.0, 1.0, g2))
      for (double x2 : linspace(0.0, 1.0, g2)) {
        const double h = 3.0 - x1 / 2.0 * (1.0 + std::sin(3.0 * kPi * x1)) -
                         x2 / 2.0 * (1.0 + std::sin(3.0 * kPi * x2));
        cand.push_back(Vec{{x1, x2, 2.0 * h}});
      }
    return nondominated_filter(std::move(cand));
  }

  if (id == "cf1" || id == "cf2" || id == "cf3") {
    // attainable objective region above the y=0 manifold curve
    const int g1 = 1601, gu = 48;
    const double urange = 0.55;
    for (double x1 : linspace(0.0, 1.0, g1)) {
      double base1 = x1, base2 = 0.0;
      if (id == "cf1") base2 = 1.0 - x1;
      if (id == "cf2") base2 = 1.0 - std::sqrt(x1);
      if (id == "cf3") base2 = 1.0 - x1 * x1;
      for (double u : linspace(0.0, urange, gu))
        for (double v : linspace(0.0, urange, gu)) {
          const double f1 = base1 + u, f2 = base2 + v;
          double c;
          if (id == "cf1")
            c = f1 + f2 - std::abs(std::sin(10.0 * kPi * (f1 - f2 + 1.0))) - 1.0;
          else if (id == "cf2")
            c = f2 + std::sqrt(f1) -
                std::sin(2.0 * kPi * (std::sqrt(f1) - f2 + 1.0)) - 1.0;
          else
            c = f2 + f1 * f1 - std::sin(2.0 * kPi * (f1 * f1 - f2 + 1.0)) - 1.0;
          if (c >= -1e-9) push2(f1, f2);
        }
    }
    return nondominated_filter(std::move(cand));
  }

  if (id == "cf4" || id == "cf5") {
    const int g1 = 2000001;
    for (double x1 : linspace(0.0, 1.0, g1)) {
      const double t_opt = std::max(0.0, 0.5 * x1 - 0.25);
      double h;
      if (t_opt < 1.5 * (1.0 - std::sqrt(0.5))) h = std::abs(t_opt);
      else h = 0.125 + (t_opt - 1.0) * (t_opt - 1.0);
      push2(x1, 1.0 - x1 + h);
    }
    return nondominated_filter(std::move(cand));
  }

  if (id == "cf6" || id == "cf7") {
    const int g1 = 2000001;
    for (double x1 : linspace(0.0, 1.0, g1)) {
      const double om = 1.0 - x1;
      const double A = 0.5 * om - om * om;
      const double B = 0.25 * std::sqrt(om) - 0.5 * om;
      auto st = [](double u) {
        return u >= 0.0 ? std::sqrt(u) : -std::sqrt(-u);
      };
      const double y2 = std::max(0.0, st(A));
      const double y4 = std::max(0.0, st(B));
      push2(x1, om * om + y2 * y2 + y4 * y4);
    }
    return nondominated_filter(std::move(cand));
  }

  if (id == "cf8" || id == "cf9" || id == "cf10") {
    const int variant = id == "cf8" ? 8 : (id == "cf9" ? 9 : 10);
    const double a = variant == 8 ? 4.0 : (variant == 9 ? 3.0 : 1.0);
    const int g2 = 1001;
    for (double x1 : linspace(0.0, 1.0, g2))
      for (double x2 : linspace(0.0, 1.0, g2)) {
        const double f1 = std::cos(0.5 * kPi * x1) * std::cos(0.5 * kPi * x2);
        const double f2 = std::cos(0.5 * kPi * x1) * std::sin(0.5 * kPi * x2);
        const double f3 = std::sin(0.5 * kPi * x1);
        const double denom = std::max(1.0 - f3 * f3, 1e-12);
        const double ratio = (f1 * f1 + f2 * f2) / denom;
        const double arg = (f1 * f1 - f2 * f2) / denom + 1.0;
        const double c = variant == 8
                             ? ratio - a * std::abs(std::sin(2.0 * kPi * arg)) - 1.0
                             : ratio - a * std::sin(2.0 * kPi * arg) - 1.0;
        if (c >= -1e-9) cand.push_back(Vec{{f1, f2, f3}});
      }
    return nondominated_filter(std::move(cand));
  }

  if (id == "conv4_2f") {
    const MopDefinition mop = make_problem("conv4_2f");
    Rng rng(20240u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto simplex_point = [&rng, &uni]() {
      std::vector<double> cuts{uni(rng), uni(rng), uni(rng)};
      std::sort(cuts.begin(), cuts.end());
      Vec b(4);
      b[0] = cuts[0];
      b[1] = cuts[1] - cuts[0];
      b[2] = cuts[2] - cuts[1];
      b[3] = 1.0 - cuts[2];
      return b;  // barycentric over the unit vectors = the point itself
    };
    for (int s = 0; s < 25000; ++s) cand.push_back(mop.eval_f(simplex_point()));
    for (int s = 0; s < 25000; ++s) {
      const Vec x = simplex_point() - Vec::Ones(4);
      if ((x.array() < 0.0).all()) cand.push_back(mop.eval_f(x));
    }
    for (int s = 0; s < 10000; ++s) {
      Vec x(4);
      for (int i = 0; i < 4; ++i) x[i] = -3.0 + 6.0 * uni(rng);
      cand.push_back(mop.eval_f(x));
    }
    return nondominated_filter(std::move(cand));
  }

  throw Error("sample_front: unknown problem id '" + id + "'");
}

}  // namespace

std::vector<Vec> sample_front(const std::string& id, int count,
                              std::uint64_t seed,
                              const std::string& cache_dir) {
  if (count < 1) throw Error("sample_front: count must be >= 1");
  lookup(id);  // validates the id

  if (id == "zdt1" || id == "zdt4")
    return curve_front(
        [](double t) { return Vec{{t, 1.0 - std::sqrt(t)}}; }, 0.0, 1.0, count);
  if (id == "zdt2")
    return curve_front([](double t) { return Vec{{t, 1.0 - t * t}}; }, 0.0, 1.0,
                       count);
  if (id == "zdt3") return zdt3_front(count);
  if (id == "zdt6")
    return curve_front([](double t) { return Vec{{t, 1.0 - t * t}}; },
                       zdt6_f1_min(), 1.0, count);
  if (id == "dtlz1") return simplex_front(3, 0.5, count, seed);
  if (id == "dtlz2" || id == "dtlz3" || id == "dtlz4")
    return sphere_front(3, count, seed);
  if (id == "dtlz5" || id == "dtlz6") {
    const double c = std::cos(kPi / 4.0);
    return curve_front(
        [c](double th) {
          return Vec{{std::cos(th) * c, std::cos(th) * c, std::sin(th)}};
        },
        0.0, kPi / 2.0, count);
  }
  if (id == "idtlz1") {
    std::vector<Vec> f = simplex_front(3, 0.5, count, seed);
    for (Vec& p : f) p = Vec::Constant(3, 0.5) - p;
    return f;
  }
  if (id == "idtlz2" || id == "idtlz3" || id == "idtlz4") {
    std::vector<Vec> f = sphere_front(3, count, seed);
    for (Vec& p : f) p = Vec::Ones(3) - p;
    return f;
  }

  // Grid-filtered fronts, cached by id when a cache directory is given.
  std::vector<Vec> dense;
  const std::filesystem::path cache =
      cache_dir.empty() ? std::filesystem::path()
                        : std::filesystem::path(cache_dir) / ("dense_" + id + ".csv");
  if (!cache.empty() && std::filesystem::exists(cache)) {
    dense = read_point_csv(cache.string());
  } else {
    dense = dense_front(id);
    if (!cache.empty()) {
      std::filesystem::create_directories(cache.parent_path());
      write_point_csv(cache.string(), dense, "f");
    }
  }
  std::vector<Vec> out = thin(std::move(dense), count, seed);
  if (!cache_dir.empty()) {
    const std::filesystem::path keyed =
        std::filesystem::path(cache_dir) /
        ("front_" + id + "_" + std::to_string(count) + ".csv");
    write_point_csv(keyed.string(), out, "f");
  }
  return out;
}

}  // namespace dpn
