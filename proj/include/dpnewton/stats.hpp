#pragma once

#include "dpnewton/common.hpp"

namespace dpn {

struct MannWhitneyResult {
  double U = 0.0;  // statistic of the first sample
  double p = 1.0;  // two-sided
  bool exact = false;
};

/// Mann-Whitney U test. Exact enumeration of the U distribution when the
/// combined sample size is at most 20 and no ties are present; otherwise a
/// normal approximation with tie correction and continuity correction.
MannWhitneyResult mann_whitney(const std::vector<double>& a,
                               const std::vector<double>& b);

/// Holm-Sidak step-down adjustment; returns adjusted p-values in the
/// original order.
std::vector<double> holm_sidak(const std::vector<double>& pvalues);

double median(std::vector<double> values);

/// Linear-interpolation quantile (q in [0,1]) of an unsorted sample.
double quantile(std::vector<double> values, double q);

}  // namespace dpn
