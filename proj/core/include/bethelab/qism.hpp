#pragma once

#include <optional>

#include "bethelab/sixvertex.hpp"

namespace bethe {

// 4x4 on V_a (x) V_l, basis |aux, site> with the auxiliary space as the leading factor.
Matrix lax(const VertexWeights& w);
Matrix lax(const WeightFamily& f, cplx u);
// (a+b)/2 + (a-b)/2 sz sz + c (s+ s- + s- s+)
Matrix lax_sigma_form(const WeightFamily& f, cplx u);
Matrix r_matrix(const WeightFamily& f, cplx w);

double ybe_residual(const WeightFamily& f, cplx u, cplx v, cplx w);
double fcr_residual(const WeightFamily& f, cplx u, cplx v);

// Solve the three independent FCR equations for (a'', b'', c'').
struct FcrReport {
  VertexWeights solution;      // unit norm, phase fixed by c''
  double singular_gap = 0.0;   // smallest / largest singular value of the 3x3 system
  double residual = 0.0;       // |system * solution|
  cplx delta1, delta2, delta_solution;
};
FcrReport fcr_three_equations(const VertexWeights& w1, const VertexWeights& w2);

double rtt_residual(const WeightFamily& f, cplx u, cplx v, int L, double theta = 0.0);

// T_a(u; theta) = K_a(theta) L_aL(u - mu_L) ... L_a1(u - mu_1), on V_a (x) H.
struct Monodromy {
  Matrix op;
  cplx u;
  double theta = 0.0;
  std::vector<cplx> mu;
  int L = 0;
};
Monodromy monodromy(const WeightFamily& f, cplx u, int L, double theta = 0.0, std::vector<cplx> mu = {});
// Ordered product of per-site Lax matrices, site 1 acting first.
Matrix lax_product(const std::vector<Matrix>& laxes);

struct AbcdBlocks {
  Matrix A, B, C, D;
  cplx u;
};
AbcdBlocks abcd(const Monodromy& m);

Matrix transfer(const Monodromy& m);
Matrix transfer(const WeightFamily& f, cplx u, int L, double theta = 0.0, const std::vector<cplx>& mu = {});
// Leibniz rule over the Lax factors.
Matrix transfer_derivative(const WeightFamily& f, cplx u, int L, const std::vector<cplx>& mu = {});

struct YbaReport {
  double bb = 0.0, ab = 0.0, db = 0.0;
  double max() const { return std::max({bb, ab, db}); }
};
YbaReport yba_residuals(const WeightFamily& f, cplx u, cplx v, int L, double theta = 0.0);

Vector vacuum(int L);
Vector aba_state(const WeightFamily& f, const std::vector<cplx>& u, int L, double theta = 0.0,
                 const std::vector<cplx>& mu = {});

cplx lambda_aba(const WeightFamily& f, cplx u0, const std::vector<cplx>& u, int L);
std::vector<cplx> aba_bae_residual(const WeightFamily& f, const std::vector<cplx>& u, int L);
// u_m = -(lambda_m + i gamma/2), rational: -(lambda_m + i/2)
cplx u_of_lambda(const WeightFamily& f, cplx lambda);

// Rayleigh quotient of t(u0; theta) on the twisted ABA state and the eigen-equation residual it leaves.
struct TwistedMeasurement {
  cplx eigenvalue;
  double residual = 0.0;  // |t psi - eigenvalue psi| / (|eigenvalue| |psi|)
};
TwistedMeasurement measure_twisted_state(const WeightFamily& f, cplx u0, const std::vector<cplx>& u, int L, double theta,
                                         const std::vector<cplx>& mu = {});

struct TraceIdentity {
  int k = 0;
  Matrix H;
  Matrix t0;
  double t0_vs_shift = 0.0;                  // max |t(0) - c^L U|, homogeneous only
  std::optional<double> closed_form;         // k = 0: |H_0 - P|, k = 1: |H_1 - (2/sin g)(H - E0)|
  std::optional<double> closed_form_negated; // k = 1: |H_1 + (2/sin g)(H - E0)|
  double hamiltonian_commutator = 0.0;       // |[H_k, H_xxz]|
};
// u* = 0; trigonometric family only.
TraceIdentity trace_identity(const WeightFamily& f, int L, int k, const std::vector<cplx>& mu = {});
Matrix momentum_operator(int L);  // -i log U with eigenvalues in (-pi, pi]

struct XxxExtras {
  double yangian = 0.0;           // max over the 16 index pairs
  double s_plus_on_shell = 0.0;   // max |S+ psi| / |psi| over on-shell states
  double s_plus_off_shell = 0.0;  // generic off-shell state
  int on_shell_states = 0;
};
double yangian_residual(cplx u, cplx v, int L);
XxxExtras xxx_extras(int L, int M, std::uint64_t seed = 0);

struct UnitarityReport {
  cplx factor;
  double residual = 0.0;  // |R(w) P R(-w) P - factor I|
};
UnitarityReport r_unitarity(const WeightFamily& f, cplx w);

}  // namespace bethe
