#pragma once

#include <algorithm>
#include <random>

#include "bethelab/types.hpp"

namespace oracle {

using bethe::cplx;
using bethe::Matrix;

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix m = random_matrix(rng, n);
  return 0.5 * (m + m.adjoint());
}

inline cplx random_cplx(std::mt19937_64& rng, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Dense diagonalization straight through Eigen, bypassing the library wrapper.
inline std::vector<double> eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return sorted(to_std(es.eigenvalues()));
}

}  // namespace oracle
