#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyqw {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Fixed-topology pairwise sum. The reduction tree depends only on the
/// length, never on thread count or timing, so results are bitwise
/// reproducible run to run.
double pairwise_sum(std::span<const double> v);

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v));
}

/// FNV-1a over raw bytes, used for content fingerprints of potentials,
/// bases and cached tables.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull);

inline std::uint64_t fnv1a(std::span<const double> v, std::uint64_t seed = 0xcbf29ce484222325ull) {
  return fnv1a(v.data(), v.size() * sizeof(double), seed);
}

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cyqw
