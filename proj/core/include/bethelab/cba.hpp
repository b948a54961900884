#pragma once

#include "bethelab/spinchain.hpp"
#include "bethelab/types.hpp"

namespace bethe {

// Amplitudes carry e^{-i p.l}; a single magnon has shift eigenvalue e^{+ip}.

// s(p, p') = 1 - 2 Delta e^{-ip'} + e^{-i(p+p')}; S(p1,p2) = -s(p1,p2)/s(p2,p1).
cplx s_aux(cplx p, cplx pp, double Delta);
cplx two_body_s(cplx p1, cplx p2, double Delta);
// Real p only: e^{-i Theta} = S, Theta(p,p) = +-pi.
double scattering_phase(double p1, double p2, double Delta);

enum class Family { xxx, xxz };

struct RapidityFamily {
  Family kind = Family::xxz;
  cplx gamma{kPi / 3.0, 0.0};  // real in (0, pi) for |Delta| < 1, imaginary for Delta > 1

  static RapidityFamily xxx() { return {Family::xxx, {0.0, 0.0}}; }
  static RapidityFamily xxz(cplx g) { return {Family::xxz, g}; }
  static RapidityFamily from_delta(double Delta);
  double delta() const;
};

struct Rapidities {
  std::vector<cplx> lambda;
  RapidityFamily family;
};

struct MagnonMap {
  cplx p;
  cplx eps1;
};

cplx momentum_of(cplx lambda, const RapidityFamily& f);
cplx momentum_prime(cplx lambda, const RapidityFamily& f);
cplx energy_of(cplx lambda, const RapidityFamily& f);
cplx rapidity_of(cplx p, const RapidityFamily& f);
std::vector<MagnonMap> rapidity_maps(const Rapidities& r);
// S(p_n, p_m) through the rapidity difference.
cplx s_from_rapidities(cplx lambda_n, cplx lambda_m, const RapidityFamily& f);

using Permutation = std::vector<int>;  // 0-based images pi(0..M-1)

struct CbaCoefficients {
  std::vector<Permutation> perms;  // lexicographic
  std::vector<cplx> amplitude;     // A_pi / A_e
  cplx at(const Permutation& pi) const;
};

std::vector<Permutation> permutations(int M);
bool coincident(const std::vector<cplx>& p, double eps = 1e-10);
CbaCoefficients cba_coefficients(const std::vector<cplx>& p, double Delta);

// Bethe wave function, also defined off the physical region l_1 < ... < l_M.
class BetheWavefunction {
 public:
  BetheWavefunction(std::vector<cplx> p, double Delta);
  cplx operator()(const std::vector<int>& l) const;
  const std::vector<cplx>& momenta() const { return p_; }

 private:
  std::vector<cplx> p_;
  CbaCoefficients coef_;
};

struct BetheState {
  SectorBasis basis;
  Vector amplitudes;  // unnormalized
  double norm = 0.0;
};
BetheState bethe_state(int L, const std::vector<cplx>& p, double Delta);

double dispersion(const std::vector<cplx>& p, double Delta);
cplx dispersion_complex(const std::vector<cplx>& p, double Delta);

struct EigenResidualReport {
  double well_separated = 0.0;  // interior configs without neighbours
  double neighboring = 0.0;     // interior configs with at least one neighbouring pair
  double boundary = 0.0;        // configs touching site 1 or L, where hops wrap
  double pair_equation = 0.0;   // 2 N Delta Psi(l) = sum'' Psi(k) with the extended wave function
  std::size_t n_well = 0, n_neighboring = 0, n_boundary = 0;
  double max() const;
};
// Residuals of (H - E0 - eps_M(p)) state per configuration class, relative to max |state|.
EigenResidualReport eigen_equation_residuals(int L, const std::vector<cplx>& p, double Delta, const Vector& state);

std::vector<cplx> bae_residual_product_form(int L, const std::vector<cplx>& p, double Delta);

}  // namespace bethe
