#pragma once

#include "dpnewton/common.hpp"

namespace dpn {

/// Bowyer-Watson incremental Delaunay triangulation for points in R^2 or
/// R^3. Returns index tuples (triangles / tetrahedra) into the input.
/// Affinely dependent input raises an Error mentioning "degenerate".
std::vector<std::vector<int>> delaunay(const std::vector<Vec>& points);

/// Verifies the empty-circumsphere property of one simplex against all
/// points (used by tests and by internal sanity checks).
bool circumsphere_empty(const std::vector<Vec>& points,
                        const std::vector<int>& simplex, double tol);

/// Uniform samples inside a simplex via sorted-uniform barycentric
/// coordinates. Vertices may live in any ambient dimension.
std::vector<Vec> sample_simplex(const std::vector<Vec>& vertices, int count,
                                std::uint64_t seed);

/// Volume of a simplex spanned by d+1 points whose coordinates live in R^d.
double simplex_volume(const std::vector<Vec>& vertices);

}  // namespace dpn
