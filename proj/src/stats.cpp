#include "dpnewton/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dpn {

namespace {

// Number of rank arrangements with statistic value u, for all u, as a
// vector indexed by u in 0..n1*n2.
std::vector<double> u_distribution(int n1, int n2) {
  const int umax = n1 * n2;
  // c[i][j][u] = arrangements of i-vs-j samples with U = u
  std::vector<std::vector<std::vector<double>>> c(
      n1 + 1, std::vector<std::vector<double>>(
                  n2 + 1, std::vector<double>(umax + 1, 0.0)));
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j <= n2; ++j) {
      for (int u = 0; u <= umax; ++u) {
        if (i == 0 || j == 0) {
          c[i][j][u] = (u == 0) ? 1.0 : 0.0;
          continue;
        }
        double v = c[i][j - 1][u];
        if (u >= j) v += c[i - 1][j][u - j];
        c[i][j][u] = v;
      }
    }
  return c[n1][n2];
}

}  // namespace

MannWhitneyResult mann_whitney(const std::vector<double>& a,
                               const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw Error("mann_whitney: empty sample");
  const int n1 = static_cast<int>(a.size());
  const int n2 = static_cast<int>(b.size());
  const int N = n1 + n2;

  // Pooled midranks.
  std::vector<std::pair<double, int>> pooled;  // (value, sample id)
  pooled.reserve(N);
  for (double v : a) pooled.emplace_back(v, 0);
  for (double v : b) pooled.emplace_back(v, 1);
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_sum = 0.0;  // sum of t^3 - t over tie groups
  bool has_ties = false;
  for (int i = 0; i < N;) {
    int j = i;
    while (j < N && pooled[j].first == pooled[i].first) ++j;
    const int t = j - i;
    const double midrank = 0.5 * (i + 1 + j);  // average of ranks i+1..j
    if (t > 1) {
      has_ties = true;
      tie_sum += static_cast<double>(t) * t * t - t;
    }
    for (int q = i; q < j; ++q)
      if (pooled[q].second == 0) rank_sum_a += midrank;
    i = j;
  }

  MannWhitneyResult out;
  out.U = rank_sum_a - 0.5 * n1 * (n1 + 1);

  if (N <= 20 && !has_ties) {
    const std::vector<double> dist = u_distribution(n1, n2);
    double total = 0.0;
    for (double d : dist) total += d;
    const int u = static_cast<int>(std::llround(out.U));
    double cdf = 0.0, sf = 0.0;
    for (int v = 0; v <= n1 * n2; ++v) {
      if (v <= u) cdf += dist[v];
      if (v >= u) sf += dist[v];
    }
    out.p = std::min(1.0, 2.0 * std::min(cdf, sf) / total);
    out.exact = true;
    return out;
  }

  const double mu = 0.5 * n1 * n2;
  double var = n1 * static_cast<double>(n2) / 12.0 *
               ((N + 1.0) - tie_sum / (static_cast<double>(N) * (N - 1.0)));
  if (var <= 0.0) {
    out.p = 1.0;
    return out;
  }
  const double z = std::max(0.0, std::abs(out.U - mu) - 0.5) / std::sqrt(var);
  out.p = std::erfc(z / std::sqrt(2.0));
  return out;
}

std::vector<double> holm_sidak(const std::vector<double>& pvalues) {
  const int m = static_cast<int>(pvalues.size());
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return pvalues[i] < pvalues[j]; });
  std::vector<double> adj(m, 0.0);
  double running = 0.0;
  for (int rank = 0; rank < m; ++rank) {
    const double p = pvalues[order[rank]];
    const double stepwise = 1.0 - std::pow(1.0 - p, m - rank);
    running = std::max(running, stepwise);
    adj[order[rank]] = std::min(1.0, running);
  }
  return adj;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(values.size() - 1, lo + 1);
  const double frac = pos - lo;
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace dpn
