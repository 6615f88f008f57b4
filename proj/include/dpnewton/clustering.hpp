#pragma once

#include "dpnewton/common.hpp"

namespace dpn {

struct Clustering {
  std::vector<int> labels;  // component id per point, -1 for noise
  int n_clusters = 0;
};

/// Density-based clustering with Euclidean metric. A point is core when its
/// closed r-neighborhood holds at least minpts points; border points join
/// the first core cluster discovered (discovery order = input order); the
/// rest is noise.
Clustering dbscan(const std::vector<Vec>& points, double r, int minpts);

/// Clustering quality used to pick DBSCAN parameters; lower is better.
/// Scores max over clusters of (largest minimum-spanning-tree edge) divided
/// by the smallest inter-cluster point distance; with a single cluster the
/// largest MST edge itself is the score. Noise points are ignored.
double weakest_link(const std::vector<Vec>& points, const Clustering& c);

/// Lloyd iterations from k-means++ seeding until the centroid shift drops
/// below 1e-8 or 200 iterations pass.
std::vector<Vec> kmeans(const std::vector<Vec>& points, int k,
                        std::uint64_t seed);

/// PAM-style swap descent from k-means++-seeded medoids; returns indices
/// into the input so associated decision vectors stay available.
std::vector<int> kmedoids(const std::vector<Vec>& points, int k,
                          std::uint64_t seed);

}  // namespace dpn
