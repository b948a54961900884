#pragma once

#include "bethelab/types.hpp"

namespace bethe {

// Spin-reversal symmetric weights. Vertex (aux_in, phys_in) -> (aux_out, phys_out), bit 1 = occupied line:
// a if aux_in == phys_in, b if the lines pass straight, c if they swap.
struct VertexWeights {
  cplx a, b, c;
};

enum class WeightKind { trigonometric, rational };

struct WeightFamily {
  WeightKind kind = WeightKind::trigonometric;
  double gamma = kPi / 3.0;
  cplx rho = 1.0;

  static WeightFamily trigonometric(double g, cplx r = 1.0) { return {WeightKind::trigonometric, g, r}; }
  static WeightFamily rational() { return {WeightKind::rational, 0.0, 1.0}; }
};

cplx delta_of(const VertexWeights& w);
// trigonometric: rho (sinh(u + i gamma), sinh u, sinh(i gamma)); rational: (u + i, u, i)
VertexWeights weights_at(const WeightFamily& f, cplx u);
VertexWeights weights_prime(const WeightFamily& f, cplx u);
cplx vertex_weight(const VertexWeights& w, int aux_in, int phys_in, int aux_out, int phys_out);

Matrix transfer_matrix(const VertexWeights& w, int L);
// Direct sum over the 2^L horizontal edge configurations of one periodic row.
Matrix transfer_matrix_rowsum(const VertexWeights& w, int L);

cplx partition_trace(const VertexWeights& w, int L, int K);
cplx partition_bruteforce(const VertexWeights& w, int L, int K, int threads = 1);

// z_m = e^{-i p_m}
cplx lambda_cba(const VertexWeights& w, const std::vector<cplx>& z, int L);
std::vector<cplx> sixvertex_bae_residual(const VertexWeights& w, const std::vector<cplx>& z, int L);

}  // namespace bethe
