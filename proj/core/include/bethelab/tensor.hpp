#pragma once

#include "bethelab/types.hpp"

namespace bethe {

// Site 1 is the leftmost tensor factor, i.e. the most significant bit of a basis index.
inline int site_bit(std::uint64_t state, int site, int n) {
  return static_cast<int>((state >> (n - site)) & 1U);
}

Matrix identity(std::size_t dim);
Matrix kron(const Matrix& a, const Matrix& b, std::size_t cap = caps::kron_dim);

// op4 acts on factors (i, j) of an n-factor space of qubits; its first factor is i.
Matrix embed_pair(const Matrix& op4, int i, int j, int n);
Matrix embed_site(const Matrix& op2, int l, int n);
// Nearest-neighbour bond (l, l+1), with the l = L bond wrapping to (L, 1).
Matrix embed_two_site(const Matrix& op4, int l, int L);
// m <- embed_pair(op4, i, j, n) * m, without materializing the embedding.
void apply_pair_left(const Matrix& op4, int i, int j, int n, Matrix& m);

Matrix permutation_operator();
Matrix partial_trace_aux(const Matrix& op);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns, orthonormal
};
Eigensystem hermitian_eig(const Matrix& op);

bool is_hermitian(const Matrix& op, double rel = 1e-12);
double commutator_norm(const Matrix& a, const Matrix& b);

namespace pauli {
Matrix id();
Matrix x();
Matrix y();
Matrix z();
Matrix plus();   // sigma^+ = |up><down|
Matrix minus();  // sigma^- = |down><up|
}  // namespace pauli

}  // namespace bethe
