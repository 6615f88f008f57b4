#include "dpnewton/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace dpn {

namespace {

Mat pairwise_distances(const std::vector<Vec>& pts) {
  const int n = static_cast<int>(pts.size());
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (pts[i] - pts[j]).norm();
  return d;
}

}  // namespace

Clustering dbscan(const std::vector<Vec>& points, double r, int minpts) {
  if (r <= 0.0) throw Error("dbscan: r must be positive");
  if (minpts < 1) throw Error("dbscan: minpts must be >= 1");
  const int n = static_cast<int>(points.size());
  Clustering out;
  out.labels.assign(n, -1);
  if (n == 0) return out;

  const Mat d = pairwise_distances(points);
  std::vector<std::vector<int>> nbrs(n);
  std::vector<bool> core(n, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (d(i, j) <= r) nbrs[i].push_back(j);
    core[i] = static_cast<int>(nbrs[i].size()) >= minpts;
  }

  int cid = 0;
  std::vector<bool> visited(n, false);
  for (int i = 0; i < n; ++i) {
    if (visited[i] || !core[i]) continue;
    // BFS over density-reachable points from this core seed.
    std::deque<int> queue{i};
    visited[i] = true;
    out.labels[i] = cid;
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      if (!core[q]) continue;  // border points do not expand
      for (int nb : nbrs[q]) {
        if (out.labels[nb] == -1) out.labels[nb] = cid;
        if (!visited[nb]) {
          visited[nb] = true;
          if (core[nb]) queue.push_back(nb);
        }
      }
    }
    ++cid;
  }
  out.n_clusters = cid;
  return out;
}

double weakest_link(const std::vector<Vec>& points, const Clustering& c) {
  if (c.n_clusters < 1) throw Error("weakest_link: need at least one cluster");
  const int n = static_cast<int>(points.size());

  std::vector<std::vector<int>> members(c.n_clusters);
  for (int i = 0; i < n; ++i)
    if (c.labels[i] >= 0) members[c.labels[i]].push_back(i);

  double worst_internal = 0.0;
  for (const auto& idx : members) {
    if (idx.size() <= 1) continue;
    // Prim's MST; track the largest edge used.
    const int m = static_cast<int>(idx.size());
    std::vector<bool> in_tree(m, false);
    std::vector<double> best(m, std::numeric_limits<double>::infinity());
    in_tree[0] = true;
    for (int j = 1; j < m; ++j) best[j] = (points[idx[j]] - points[idx[0]]).norm();
    double max_edge = 0.0;
    for (int step = 1; step < m; ++step) {
      int pick = -1;
      for (int j = 0; j < m; ++j)
        if (!in_tree[j] && (pick < 0 || best[j] < best[pick])) pick = j;
      max_edge = std::max(max_edge, best[pick]);
      in_tree[pick] = true;
      for (int j = 0; j < m; ++j)
        if (!in_tree[j])
          best[j] = std::min(best[j], (points[idx[j]] - points[idx[pick]]).norm());
    }
    worst_internal = std::max(worst_internal, max_edge);
  }

  if (c.n_clusters == 1) return worst_internal;

  double min_between = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (c.labels[i] < 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (c.labels[j] < 0 || c.labels[j] == c.labels[i]) continue;
      min_between = std::min(min_between, (points[i] - points[j]).norm());
    }
  }
  if (!(min_between > 0.0)) return std::numeric_limits<double>::infinity();
  return worst_internal / min_between;
}

namespace {

// k-means++ seeding over the point set; returns chosen indices.
std::vector<int> kmeanspp_indices(const std::vector<Vec>& pts, int k, Rng& rng) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> chosen;
  std::uniform_int_distribution<int> uni(0, n - 1);
  chosen.push_back(uni(rng));
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(chosen.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (pts[i] - pts[chosen.back()]).squaredNorm());
      total += d2[i];
    }
    int next = -1;
    if (total <= 0.0) {
      // all mass at distance zero: pick the first unchosen point
      for (int i = 0; i < n && next < 0; ++i)
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) next = i;
      if (next < 0) next = uni(rng);
    } else {
      std::uniform_real_distribution<double> ur(0.0, total);
      double target = ur(rng), acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) { next = i; break; }
      }
      if (next < 0) next = n - 1;
    }
    chosen.push_back(next);
  }
  return chosen;
}

}  // namespace

std::vector<Vec> kmeans(const std::vector<Vec>& points, int k,
                        std::uint64_t seed) {
  const int n = static_cast<int>(points.size());
  if (k > n) throw Error("kmeans: k exceeds number of points");
  if (k <= 0) throw Error("kmeans: k must be positive");
  Rng rng(seed);

  std::vector<Vec> centroids;
  for (int idx : kmeanspp_indices(points, k, rng)) centroids.push_back(points[idx]);

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 200; ++iter) {
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (points[i] - centroids[c]).squaredNorm();
        if (d < best) { best = d; assign[i] = c; }
      }
    }
    std::vector<Vec> next(k, Vec::Zero(points[0].size()));
    std::vector<int> count(k, 0);
    for (int i = 0; i < n; ++i) { next[assign[i]] += points[i]; ++count[assign[i]]; }
    for (int c = 0; c < k; ++c) {
      if (count[c] == 0) {
        // revive an empty cluster at the point farthest from its centroid
        int far = 0; double fd = -1.0;
        for (int i = 0; i < n; ++i) {
          const double d = (points[i] - centroids[assign[i]]).squaredNorm();
          if (d > fd) { fd = d; far = i; }
        }
        next[c] = points[far];
        assign[far] = c;
      } else {
        next[c] /= count[c];
      }
    }
    double shift = 0.0;
    for (int c = 0; c < k; ++c) shift = std::max(shift, (next[c] - centroids[c]).norm());
    centroids = std::move(next);
    if (shift < 1e-8) break;
  }
  return centroids;
}

std::vector<int> kmedoids(const std::vector<Vec>& points, int k,
                          std::uint64_t seed) {
  const int n = static_cast<int>(points.size());
  if (k > n) throw Error("kmedoids: k exceeds number of points");
  if (k <= 0) throw Error("kmedoids: k must be positive");
  Rng rng(seed);
  const Mat d = pairwise_distances(points);

  std::vector<int> medoids = kmeanspp_indices(points, k, rng);
  std::sort(medoids.begin(), medoids.end());

  auto total_cost = [&](const std::vector<int>& meds) {
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int mm : meds) best = std::min(best, d(i, mm));
      cost += best;
    }
    return cost;
  };

  double cost = total_cost(medoids);
  bool improved = true;
  while (improved) {
    improved = false;
    int best_m = -1, best_c = -1;
    double best_cost = cost;
    for (int mi = 0; mi < k; ++mi) {
      for (int cand = 0; cand < n; ++cand) {
        if (std::find(medoids.begin(), medoids.end(), cand) != medoids.end())
          continue;
        std::vector<int> trial = medoids;
        trial[mi] = cand;
        const double c2 = total_cost(trial);
        if (c2 < best_cost - 1e-15) { best_cost = c2; best_m = mi; best_c = cand; }
      }
    }
    if (best_m >= 0) {
      medoids[best_m] = best_c;
      cost = best_cost;
      improved = true;
    }
  }
  std::sort(medoids.begin(), medoids.end());
  return medoids;
}

}  // namespace dpn
