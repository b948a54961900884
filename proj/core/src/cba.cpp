#include "bethelab/cba.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bethe {

namespace {

cplx pairwise_sum(std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return {};
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double wrap_pi(double x) { return std::remainder(x, 2.0 * kPi); }

}  // namespace

cplx s_aux(cplx p, cplx pp, double Delta) {
  return 1.0 - 2.0 * Delta * std::exp(-kI * pp) + std::exp(-kI * (p + pp));
}

cplx two_body_s(cplx p1, cplx p2, double Delta) {
  const cplx den = s_aux(p2, p1, Delta);
  const cplx num = s_aux(p1, p2, Delta);
  if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(num))) throw PoleError("two_body_s: pole of the S-matrix", {p1, p2});
  return -num / den;
}

double scattering_phase(double p1, double p2, double Delta) {
  const double P = 0.5 * (p1 + p2), q = 0.5 * (p1 - p2);
  const double y = Delta * std::sin(q), x = std::cos(P) - Delta * std::cos(q);
  if (x == 0.0 && y == 0.0) throw PoleError("scattering_phase: branch point", {p1, p2});
  return -kPi + 2.0 * std::atan2(y, x);
}

RapidityFamily RapidityFamily::from_delta(double Delta) {
  if (Delta == 1.0) return xxx();
  if (std::abs(Delta) < 1.0) return xxz(std::acos(Delta));
  if (Delta > 1.0) return xxz(cplx{0.0, std::acosh(Delta)});
  if (Delta < -1.0) return xxz(cplx{kPi, std::acosh(-Delta)});
  throw DomainError("rapidity family: Delta = -1 has no trigonometric parametrization");
}

double RapidityFamily::delta() const { return kind == Family::xxx ? 1.0 : std::cos(gamma).real(); }

namespace {

void check_family(const RapidityFamily& f) {
  if (f.kind == Family::xxz && std::abs(std::sin(f.gamma)) < 1e-14) throw DomainError("rapidity family: sin(gamma) = 0");
}

cplx ratio(cplx lambda, const RapidityFamily& f) {
  check_family(f);
  if (f.kind == Family::xxx) {
    const cplx den = lambda - 0.5 * kI;
    if (std::abs(den) < 1e-14 || std::abs(lambda + 0.5 * kI) < 1e-14) throw PoleError("rapidity at pole", {lambda});
    return (lambda + 0.5 * kI) / den;
  }
  const cplx num = std::sinh(lambda + 0.5 * kI * f.gamma), den = std::sinh(lambda - 0.5 * kI * f.gamma);
  if (std::abs(den) < 1e-14 || std::abs(num) < 1e-14) throw PoleError("rapidity at pole", {lambda});
  return num / den;
}

}  // namespace

cplx momentum_of(cplx lambda, const RapidityFamily& f) {
  cplx p = kI * std::log(ratio(lambda, f));
  if (p.real() < 0.0) p += 2.0 * kPi;
  return p;
}

cplx momentum_prime(cplx lambda, const RapidityFamily& f) {
  ratio(lambda, f);
  if (f.kind == Family::xxx) return kI * (1.0 / (lambda + 0.5 * kI) - 1.0 / (lambda - 0.5 * kI));
  const cplx g = f.gamma;
  return kI * (1.0 / std::tanh(lambda + 0.5 * kI * g) - 1.0 / std::tanh(lambda - 0.5 * kI * g));
}

cplx energy_of(cplx lambda, const RapidityFamily& f) {
  ratio(lambda, f);
  if (f.kind == Family::xxx) return 2.0 / (4.0 * lambda * lambda + 1.0);
  const cplx g = f.gamma, s = std::sin(g);
  return 0.5 * s * s / (std::sinh(lambda + 0.5 * kI * g) * std::sinh(lambda - 0.5 * kI * g));
}

cplx rapidity_of(cplx p, const RapidityFamily& f) {
  check_family(f);
  const cplx cot = std::cos(0.5 * p) / std::sin(0.5 * p);
  if (f.kind == Family::xxx) return -0.5 * cot;
  return std::atanh(-std::tan(0.5 * f.gamma) * cot);
}

std::vector<MagnonMap> rapidity_maps(const Rapidities& r) {
  std::vector<MagnonMap> out;
  out.reserve(r.lambda.size());
  for (cplx l : r.lambda) out.push_back({momentum_of(l, r.family), energy_of(l, r.family)});
  return out;
}

cplx s_from_rapidities(cplx lambda_n, cplx lambda_m, const RapidityFamily& f) {
  check_family(f);
  const cplx d = lambda_m - lambda_n;
  if (f.kind == Family::xxx) return (d + kI) / (d - kI);
  return std::sinh(d + kI * f.gamma) / std::sinh(d - kI * f.gamma);
}

std::vector<Permutation> permutations(int M) {
  if (M < 0 || M > caps::max_permutation_m) throw SizeError("permutations: M exceeds factorial cap");
  std::vector<Permutation> out;
  Permutation pi(M);
  std::iota(pi.begin(), pi.end(), 0);
  do out.push_back(pi);
  while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

bool coincident(const std::vector<cplx>& p, double eps) {
  for (std::size_t m = 0; m < p.size(); ++m)
    for (std::size_t n = m + 1; n < p.size(); ++n) {
      const cplx d = p[m] - p[n];
      if (std::abs(wrap_pi(d.real())) < eps && std::abs(d.imag()) < eps) return true;
    }
  return false;
}

cplx CbaCoefficients::at(const Permutation& pi) const {
  auto it = std::lower_bound(perms.begin(), perms.end(), pi);
  if (it == perms.end() || *it != pi) throw DomainError("CbaCoefficients: unknown permutation");
  return amplitude[static_cast<std::size_t>(it - perms.begin())];
}

CbaCoefficients cba_coefficients(const std::vector<cplx>& p, double Delta) {
  const int M = static_cast<int>(p.size());
  CbaCoefficients c;
  c.perms = permutations(M);
  std::vector<std::vector<cplx>> S(M, std::vector<cplx>(M, 1.0));
  for (int m = 0; m < M; ++m)
    for (int n = m + 1; n < M; ++n) S[m][n] = two_body_s(p[m], p[n], Delta);
  c.amplitude.reserve(c.perms.size());
  for (const auto& pi : c.perms) {
    cplx a = 1.0;
    for (int m = 0; m < M; ++m)
      for (int n = m + 1; n < M; ++n)
        if (pi[m] > pi[n]) a *= S[m][n];
    c.amplitude.push_back(a);
  }
  return c;
}

BetheWavefunction::BetheWavefunction(std::vector<cplx> p, double Delta)
    : p_(std::move(p)), coef_(cba_coefficients(p_, Delta)) {}

cplx BetheWavefunction::operator()(const std::vector<int>& l) const {
  if (l.size() != p_.size()) throw SizeError("wave function: wrong number of positions");
  std::vector<cplx> terms;
  terms.reserve(coef_.perms.size());
  for (std::size_t k = 0; k < coef_.perms.size(); ++k) {
    const auto& pi = coef_.perms[k];
    cplx phase = 0.0;
    for (std::size_t m = 0; m < l.size(); ++m) phase += p_[pi[m]] * static_cast<double>(l[m]);
    terms.push_back(coef_.amplitude[k] * std::exp(-kI * phase));
  }
  return pairwise_sum(terms, 0, terms.size());
}

BetheState bethe_state(int L, const std::vector<cplx>& p, double Delta) {
  const int M = static_cast<int>(p.size());
  if (M > L) throw DomainError("bethe_state: M > L");
  if (M > caps::max_permutation_m) throw SizeError("bethe_state: M exceeds factorial cap");
  BetheState st;
  st.basis = sector_basis(L, M);
  const BetheWavefunction psi(p, Delta);
  st.amplitudes.resize(st.basis.size());
  for (std::size_t k = 0; k < st.basis.size(); ++k) st.amplitudes(k) = psi(st.basis.configs[k]);
  st.norm = st.amplitudes.norm();
  return st;
}

cplx dispersion_complex(const std::vector<cplx>& p, double Delta) {
  cplx e = 0.0;
  for (cplx q : p) e += Delta - std::cos(q);
  return e;
}

double dispersion(const std::vector<cplx>& p, double Delta) { return dispersion_complex(p, Delta).real(); }

double EigenResidualReport::max() const { return std::max({well_separated, neighboring, boundary, pair_equation}); }

EigenResidualReport eigen_equation_residuals(int L, const std::vector<cplx>& p, double Delta, const Vector& state) {
  const int M = static_cast<int>(p.size());
  const SectorBasis basis = sector_basis(L, M);
  if (static_cast<std::size_t>(state.size()) != basis.size()) throw SizeError("eigen_equation_residuals: state not in sector M");
  const ChainParams cp{L, 1.0, Delta, 0.0};
  const cplx E = vacuum_energy(cp) + dispersion_complex(p, Delta);
  const Vector r = xxz_sector(cp, basis) * state - E * state;
  const double scale = std::max(state.cwiseAbs().maxCoeff(), 1e-300);

  const BetheWavefunction psi(p, Delta);
  double psi_scale = 0.0;
  for (const auto& cfg : basis.configs) psi_scale = std::max(psi_scale, std::abs(psi(cfg)));
  psi_scale = std::max(psi_scale, 1e-300);

  EigenResidualReport rep;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& cfg = basis.configs[k];
    const double res = std::abs(r(k)) / scale;
    int neighbours = 0;
    for (int n = 0; n + 1 < M; ++n) neighbours += cfg[n + 1] == cfg[n] + 1;
    const bool boundary = M > 0 && (cfg.front() == 1 || cfg.back() == L);
    if (boundary) {
      rep.boundary = std::max(rep.boundary, res);
      ++rep.n_boundary;
    } else if (neighbours == 0) {
      rep.well_separated = std::max(rep.well_separated, res);
      ++rep.n_well;
    } else {
      rep.neighboring = std::max(rep.neighboring, res);
      ++rep.n_neighboring;
    }
    if (neighbours > 0) {
      cplx rhs = 0.0;
      for (int n = 0; n + 1 < M; ++n) {
        if (cfg[n + 1] != cfg[n] + 1) continue;
        auto lo = cfg, hi = cfg;
        lo[n + 1] = cfg[n];
        hi[n] = cfg[n + 1];
        rhs += psi(lo) + psi(hi);
      }
      const double pr = std::abs(2.0 * neighbours * Delta * psi(cfg) - rhs) / psi_scale;
      rep.pair_equation = std::max(rep.pair_equation, pr);
    }
  }
  return rep;
}

std::vector<cplx> bae_residual_product_form(int L, const std::vector<cplx>& p, double Delta) {
  const std::size_t M = p.size();
  std::vector<cplx> out(M);
  for (std::size_t m = 0; m < M; ++m) {
    cplx prod = 1.0;
    for (std::size_t n = 0; n < M; ++n)
      if (n != m) prod *= two_body_s(p[n], p[m], Delta);
    out[m] = std::exp(-kI * p[m] * static_cast<double>(L)) - prod;
  }
  return out;
}

}  // namespace bethe
