#pragma once

#include "dpnewton/common.hpp"
#include "dpnewton/mop.hpp"

#include <optional>
#include <string>

namespace dpn {

struct BenchmarkSpec {
  std::string id;
  int default_n = 0;
  int k = 0;
  int native_inequalities = 0;
  bool n_fixed = false;
  int min_n = 2;
};

struct ProblemOverrides {
  std::optional<int> n;
};

std::vector<std::string> list_problems();

const BenchmarkSpec& benchmark_spec(const std::string& id);

/// Builds a benchmark instance by id ("zdt1", "dtlz2", "cf3", "conv4_2f",
/// ...) with paper-default dimensions unless overridden. Formulas are
/// documented in PROBLEMS.md.
MopDefinition make_problem(const std::string& id,
                           const ProblemOverrides& overrides = {});

/// Samples the true Pareto front. Closed-form parametrizations where they
/// exist; otherwise dense non-dominated filtering of a fine parameter grid,
/// cached under cache_dir (when non-empty) keyed by id.
std::vector<Vec> sample_front(const std::string& id, int count,
                              std::uint64_t seed,
                              const std::string& cache_dir = "");

}  // namespace dpn
