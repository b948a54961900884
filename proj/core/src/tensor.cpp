#include "bethelab/tensor.hpp"

#include <string>

namespace bethe {

namespace {

void require_finite(const Matrix& m, const char* who) {
  if (!m.allFinite()) throw DomainError(std::string(who) + ": non-finite entries");
}

std::uint64_t set_pair(std::uint64_t s, int i, int j, int n, int two_bits) {
  const std::uint64_t bi = std::uint64_t{1} << (n - i);
  const std::uint64_t bj = std::uint64_t{1} << (n - j);
  s &= ~(bi | bj);
  if (two_bits & 2) s |= bi;
  if (two_bits & 1) s |= bj;
  return s;
}

void check_pair(const Matrix& op4, int i, int j, int n) {
  if (op4.rows() != 4 || op4.cols() != 4) throw SizeError("pair operator must be 4x4");
  if (n < 2 || n > 62) throw SizeError("pair embedding needs 2 <= n <= 62 factors");
  if (i < 1 || i > n || j < 1 || j > n || i == j) throw DomainError("invalid factor pair");
}

}  // namespace

Matrix identity(std::size_t dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b, std::size_t cap) {
  require_finite(a, "kron");
  require_finite(b, "kron");
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows > cap || cols > cap) throw SizeError("kron: dimension " + std::to_string(rows) + " exceeds cap");
  Matrix out(rows, cols);
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

Matrix embed_pair(const Matrix& op4, int i, int j, int n) {
  check_pair(op4, i, j, n);
  if (n > caps::full_sites + 2) throw SizeError("embed_pair: too many factors for a dense matrix");
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    const int in = 2 * site_bit(s, i, n) + site_bit(s, j, n);
    for (int o = 0; o < 4; ++o) {
      const cplx v = op4(o, in);
      if (v != cplx{}) out(set_pair(s, i, j, n, o), s) = v;
    }
  }
  return out;
}

void apply_pair_left(const Matrix& op4, int i, int j, int n, Matrix& m) {
  check_pair(op4, i, j, n);
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (static_cast<std::uint64_t>(m.rows()) != dim) throw SizeError("apply_pair_left: row mismatch");
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (std::uint64_t s = 0; s < dim; ++s) {
    const int in = 2 * site_bit(s, i, n) + site_bit(s, j, n);
    for (int o = 0; o < 4; ++o) {
      const cplx v = op4(o, in);
      if (v != cplx{}) out.row(set_pair(s, i, j, n, o)) += v * m.row(s);
    }
  }
  m.swap(out);
}

Matrix embed_site(const Matrix& op2, int l, int n) {
  if (op2.rows() != 2 || op2.cols() != 2) throw SizeError("site operator must be 2x2");
  if (l < 1 || l > n) throw DomainError("invalid site");
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  const std::uint64_t bit = std::uint64_t{1} << (n - l);
  for (std::uint64_t s = 0; s < dim; ++s) {
    const int in = site_bit(s, l, n);
    for (int o = 0; o < 2; ++o) {
      const cplx v = op2(o, in);
      if (v != cplx{}) out(o ? (s | bit) : (s & ~bit), s) = v;
    }
  }
  return out;
}

Matrix embed_two_site(const Matrix& op4, int l, int L) {
  if (L < 2) throw SizeError("embed_two_site: L < 2");
  if (L > caps::full_sites) throw SizeError("embed_two_site: L exceeds full-space cap");
  if (l < 1 || l > L) throw DomainError("embed_two_site: site out of range");
  return embed_pair(op4, l, l == L ? 1 : l + 1, L);
}

Matrix permutation_operator() {
  Matrix P = Matrix::Zero(4, 4);
  P(0, 0) = P(3, 3) = 1.0;
  P(1, 2) = P(2, 1) = 1.0;
  return P;
}

Matrix partial_trace_aux(const Matrix& op) {
  if (op.rows() != op.cols() || op.rows() % 2 != 0) throw SizeError("partial_trace_aux: need even square matrix");
  const Eigen::Index n = op.rows() / 2;
  return op.topLeftCorner(n, n) + op.bottomRightCorner(n, n);
}

bool is_hermitian(const Matrix& op, double rel) {
  if (op.rows() != op.cols()) return false;
  const double nrm = op.norm();
  return (op - op.adjoint()).norm() <= rel * std::max(nrm, 1.0);
}

Eigensystem hermitian_eig(const Matrix& op) {
  require_finite(op, "hermitian_eig");
  if (!is_hermitian(op, 1e-10)) throw ContractError("hermitian_eig: operator is not hermitian");
  const Matrix sym = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw ContractError("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw SizeError("commutator_norm: dimension mismatch");
  return (a * b - b * a).norm();
}

namespace pauli {
Matrix id() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}
Matrix y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}
Matrix z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
Matrix plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
Matrix minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}
}  // namespace pauli

}  // namespace bethe
