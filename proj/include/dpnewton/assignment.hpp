#pragma once

#include "dpnewton/common.hpp"

namespace dpn {

struct Assignment {
  std::vector<int> perm;  // row i is paired with column perm[i]
  double cost = 0.0;
};

/// Exact minimum-cost perfect matching on a square cost matrix
/// (Hungarian algorithm with potentials, O(n^3)).
Assignment hungarian(const Mat& costs);

}  // namespace dpn
