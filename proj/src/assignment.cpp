#include "dpnewton/assignment.hpp"

#include <limits>

namespace dpn {

Assignment hungarian(const Mat& costs) {
  if (costs.rows() != costs.cols())
    throw Error("hungarian: cost matrix must be square");
  if (!is_finite(costs)) throw Error("hungarian: non-finite costs");
  const int n = static_cast<int>(costs.rows());
  const double inf = std::numeric_limits<double>::infinity();

  // Potentials-based shortest augmenting path, 1-based with a dummy column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = costs(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  Assignment out;
  out.perm.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.perm[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) out.cost += costs(i, out.perm[i]);
  return out;
}

}  // namespace dpn
