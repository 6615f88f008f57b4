#include "dpnewton/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace dpn {

namespace {

struct Circumsphere {
  Vec center;
  double r2 = 0.0;
  bool valid = false;
};

Circumsphere circumsphere(const std::vector<Vec>& pts,
                          const std::vector<int>& simplex) {
  const int d = static_cast<int>(pts[simplex[0]].size());
  Mat A(d, d);
  Vec b(d);
  const Vec& v0 = pts[simplex[0]];
  for (int i = 0; i < d; ++i) {
    const Vec& vi = pts[simplex[i + 1]];
    A.row(i) = 2.0 * (vi - v0).transpose();
    b[i] = vi.squaredNorm() - v0.squaredNorm();
  }
  Circumsphere cs;
  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible()) return cs;
  cs.center = lu.solve(b);
  cs.r2 = (cs.center - v0).squaredNorm();
  cs.valid = true;
  return cs;
}

}  // namespace

bool circumsphere_empty(const std::vector<Vec>& points,
                        const std::vector<int>& simplex, double tol) {
  const Circumsphere cs = circumsphere(points, simplex);
  if (!cs.valid) return false;
  for (size_t i = 0; i < points.size(); ++i) {
    if (std::find(simplex.begin(), simplex.end(), static_cast<int>(i)) !=
        simplex.end())
      continue;
    const double d2 = (points[i] - cs.center).squaredNorm();
    if (d2 < cs.r2 * (1.0 - tol) - tol) return false;
  }
  return true;
}

std::vector<std::vector<int>> delaunay(const std::vector<Vec>& points) {
  if (points.empty()) throw Error("delaunay: empty input");
  const int d = static_cast<int>(points[0].size());
  if (d != 2 && d != 3) throw Error("delaunay: only dimensions 2 and 3");
  const int n = static_cast<int>(points.size());
  if (n < d + 1) throw Error("delaunay: need at least d+1 points");

  // Affine-rank check up front; collinear/coplanar input is degenerate.
  Vec mean = Vec::Zero(d);
  for (const Vec& p : points) mean += p;
  mean /= n;
  Mat centered(n, d);
  for (int i = 0; i < n; ++i) centered.row(i) = (points[i] - mean).transpose();
  Eigen::JacobiSVD<Mat> svd(centered);
  const double smax = svd.singularValues()[0];
  if (smax <= 0.0 || svd.singularValues()[d - 1] <= 1e-9 * smax)
    throw Error("delaunay: degenerate input (affinely dependent points)");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((points[i] - points[j]).norm() <= 1e-12 * (1.0 + smax))
        throw Error("delaunay: degenerate input (duplicate points)");

  // Work on translated/uniformly scaled copies; Delaunay-ness is invariant.
  const double scale = centered.cwiseAbs().maxCoeff();
  std::vector<Vec> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = (points[i] - mean) / scale;

  // Super-simplex well outside the normalized cloud.
  const double big = 64.0;
  if (d == 2) {
    pts.push_back(big * Vec{{0.0, 2.0}});
    pts.push_back(big * Vec{{-1.8, -1.2}});
    pts.push_back(big * Vec{{1.8, -1.2}});
  } else {
    pts.push_back(big * Vec{{0.0, 0.0, 3.0}});
    pts.push_back(big * Vec{{2.4, 0.0, -1.0}});
    pts.push_back(big * Vec{{-1.2, 2.1, -1.0}});
    pts.push_back(big * Vec{{-1.2, -2.1, -1.0}});
  }

  std::vector<std::vector<int>> simplices;
  {
    std::vector<int> super(d + 1);
    for (int i = 0; i <= d; ++i) super[i] = n + i;
    simplices.push_back(super);
  }

  for (int ip = 0; ip < n; ++ip) {
    const Vec& p = pts[ip];
    std::vector<std::vector<int>> keep;
    std::map<std::vector<int>, int> facet_count;
    for (const auto& s : simplices) {
      const Circumsphere cs = circumsphere(pts, s);
      const bool bad =
          !cs.valid || (p - cs.center).squaredNorm() < cs.r2 * (1.0 - 1e-12);
      if (!bad) {
        keep.push_back(s);
        continue;
      }
      for (int drop = 0; drop <= d; ++drop) {
        std::vector<int> facet;
        for (int i = 0; i <= d; ++i)
          if (i != drop) facet.push_back(s[i]);
        std::sort(facet.begin(), facet.end());
        ++facet_count[facet];
      }
    }
    simplices = std::move(keep);
    for (const auto& [facet, count] : facet_count) {
      if (count != 1) continue;  // interior facet of the cavity
      std::vector<int> s = facet;
      s.push_back(ip);
      simplices.push_back(std::move(s));
    }
  }

  std::vector<std::vector<int>> out;
  for (auto& s : simplices) {
    if (std::any_of(s.begin(), s.end(), [n](int v) { return v >= n; })) continue;
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec> sample_simplex(const std::vector<Vec>& vertices, int count,
                                std::uint64_t seed) {
  if (count < 0) throw Error("sample_simplex: negative count");
  std::vector<Vec> out;
  if (count == 0 || vertices.empty()) return out;
  const int d = static_cast<int>(vertices.size()) - 1;
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<double> cuts(d);
    for (double& c : cuts) c = uni(rng);
    std::sort(cuts.begin(), cuts.end());
    Vec x = Vec::Zero(vertices[0].size());
    double prev = 0.0;
    for (int i = 0; i < d; ++i) {
      x += (cuts[i] - prev) * vertices[i];
      prev = cuts[i];
    }
    x += (1.0 - prev) * vertices[d];
    out.push_back(std::move(x));
  }
  return out;
}

double simplex_volume(const std::vector<Vec>& vertices) {
  const int d = static_cast<int>(vertices.size()) - 1;
  Mat E(d, d);
  for (int i = 0; i < d; ++i) E.col(i) = vertices[i + 1] - vertices[0];
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  return std::abs(E.determinant()) / fact;
}

}  // namespace dpn
