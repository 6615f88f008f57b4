#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Library-wide error type; the message carries the offending detail
/// (index, dimension, file/row, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a nearest-neighbor minimum is attained by two or more
/// candidates and a derivative was requested.
class TieError : public Error {
 public:
  TieError(const std::string& msg, std::vector<std::pair<int, int>> tied)
      : Error(msg), tied_indices(std::move(tied)) {}
  std::vector<std::pair<int, int>> tied_indices;
};

using Rng = std::mt19937_64;

/// splitmix64 step; used to derive independent sub-seeds from one seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::vector<double> to_std(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline bool is_finite(const Vec& v) { return v.allFinite(); }
inline bool is_finite(const Mat& m) { return m.allFinite(); }

}  // namespace dpn
