#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bethe {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

namespace caps {
inline constexpr std::size_t kron_dim = std::size_t{1} << 16;
inline constexpr int full_sites = 14;
inline constexpr int monodromy_sites = 10;  // dense operators on V_a (x) H, and on V_a (x) V_b (x) H for RTT
inline constexpr int max_permutation_m = 8;
inline constexpr int max_newton_iter = 200;
inline constexpr int bruteforce_edges = 20;
}  // namespace caps

namespace tol {
inline constexpr double algebraic = 1e-12;
inline constexpr double eigen = 1e-10;
inline constexpr double cross = 1e-8;
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ContractError : Error {
  using Error::Error;
};
struct PoleError : Error {
  PoleError(const std::string& what, std::vector<cplx> at) : Error(what), where(std::move(at)) {}
  std::vector<cplx> where;
};

// Independent reproducible streams: stream k of a seed never overlaps stream k' in practice.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return std::mt19937_64(z ^ (z >> 31));
}

}  // namespace bethe
