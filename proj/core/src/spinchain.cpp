#include "bethelab/spinchain.hpp"

#include <bit>
#include <cmath>

#include "bethelab/tensor.hpp"

namespace bethe {

void validate(const ChainParams& p) {
  if (p.L < 2) throw DomainError("chain needs L >= 2");
  if (!std::isfinite(p.J) || !std::isfinite(p.Delta) || !std::isfinite(p.h))
    throw DomainError("chain parameters must be finite");
}

double vacuum_energy(const ChainParams& p) { return -p.J * p.Delta * p.L / 4.0 - p.h * p.L / 2.0; }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::size_t SectorBasis::find(std::uint64_t state) const {
  auto it = index.find(state);
  if (it == index.end()) throw DomainError("state not in sector");
  return it->second;
}

std::uint64_t state_of(const std::vector<int>& config, int L) {
  std::uint64_t s = 0;
  for (int l : config) s |= std::uint64_t{1} << (L - l);
  return s;
}

SectorBasis sector_basis(int L, int M) {
  if (L < 1 || L > 62) throw SizeError("sector_basis: L out of range");
  if (M < 0 || M > L) throw DomainError("sector_basis: M out of range");
  SectorBasis b;
  b.L = L;
  b.M = M;
  std::vector<int> cfg(M);
  for (int m = 0; m < M; ++m) cfg[m] = m + 1;
  while (true) {
    b.index.emplace(state_of(cfg, L), b.configs.size());
    b.states.push_back(state_of(cfg, L));
    b.configs.push_back(cfg);
    int m = M - 1;
    while (m >= 0 && cfg[m] == L - (M - 1 - m)) --m;
    if (m < 0) break;
    ++cfg[m];
    for (int k = m + 1; k < M; ++k) cfg[k] = cfg[k - 1] + 1;
  }
  return b;
}

Matrix local_xxz_block(double J, double Delta) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = Delta;
  m(1, 1) = m(2, 2) = -Delta;
  m(1, 2) = m(2, 1) = 2.0;
  return (-J / 4.0) * m;
}

Matrix xxz_full(const ChainParams& p) {
  validate(p);
  if (p.L > caps::full_sites) throw SizeError("build_xxz: L exceeds full-space cap");
  const Matrix block = local_xxz_block(p.J, p.Delta);
  const std::size_t dim = std::size_t{1} << p.L;
  Matrix H = Matrix::Zero(dim, dim);
  for (int l = 1; l <= p.L; ++l) H += embed_two_site(block, l, p.L);
  if (p.h != 0.0) H -= p.h * total_sz(p.L);
  return H;
}

Matrix xxz_sector(const ChainParams& p, const SectorBasis& basis) {
  validate(p);
  const int L = p.L;
  if (basis.L != L) throw DomainError("xxz_sector: basis length mismatch");
  Matrix H = Matrix::Zero(basis.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::uint64_t s = basis.states[k];
    double diag = 0.0;
    for (int l = 1; l <= L; ++l) {
      const int r = l == L ? 1 : l + 1;
      const int a = site_bit(s, l, L), b = site_bit(s, r, L);
      diag += -p.J * p.Delta * (0.5 - a) * (0.5 - b);
      if (a != b) {
        const std::uint64_t t = s ^ (std::uint64_t{1} << (L - l)) ^ (std::uint64_t{1} << (L - r));
        H(basis.find(t), k) += -p.J / 2.0;
      }
      diag -= p.h * (0.5 - a);
    }
    H(k, k) += diag;
  }
  return H;
}

XxzHamiltonian build_xxz(const ChainParams& p) {
  XxzHamiltonian out;
  out.full = xxz_full(p);
  for (int M = 0; M <= p.L; ++M) {
    out.bases.push_back(sector_basis(p.L, M));
    out.blocks.push_back(xxz_sector(p, out.bases.back()));
  }
  return out;
}

Matrix total_sz(int L) {
  if (L < 1 || L > caps::full_sites) throw SizeError("total_sz: L out of range");
  const std::size_t dim = std::size_t{1} << L;
  Matrix S = Matrix::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) S(s, s) = L / 2.0 - std::popcount(s);
  return S;
}

Matrix total_s_plus(int L) {
  if (L < 1 || L > caps::full_sites) throw SizeError("total_s_plus: L out of range");
  const std::size_t dim = std::size_t{1} << L;
  Matrix S = Matrix::Zero(dim, dim);
  for (int l = 1; l <= L; ++l) S += embed_site(pauli::plus(), l, L);
  return S;
}

Matrix shift_operator(int L) {
  if (L < 1 || L > caps::full_sites) throw SizeError("shift_operator: L out of range");
  const std::size_t dim = std::size_t{1} << L;
  Matrix U = Matrix::Zero(dim, dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    // content of site l moves to site l+1; site L wraps to site 1
    const std::uint64_t t = (s >> 1) | ((s & 1U) << (L - 1));
    U(t, s) = 1.0;
  }
  return U;
}

Matrix ising_diagonal(int L) {
  if (L < 2 || L > caps::full_sites) throw SizeError("ising_diagonal: L out of range");
  const std::size_t dim = std::size_t{1} << L;
  Matrix D = Matrix::Zero(dim, dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    double e = 0.0;
    for (int l = 1; l <= L; ++l) e -= (0.5 - site_bit(s, l, L)) * (0.5 - site_bit(s, l == L ? 1 : l + 1, L));
    D(s, s) = e;
  }
  return D;
}

Vector to_full(const Vector& v, const SectorBasis& basis) {
  if (static_cast<std::size_t>(v.size()) != basis.size()) throw SizeError("to_full: size mismatch");
  if (basis.L > caps::full_sites) throw SizeError("to_full: L exceeds full-space cap");
  Vector out = Vector::Zero(std::size_t{1} << basis.L);
  for (std::size_t k = 0; k < basis.size(); ++k) out(basis.states[k]) = v(k);
  return out;
}

Vector to_sector(const Vector& v, const SectorBasis& basis) {
  if (static_cast<std::size_t>(v.size()) != (std::size_t{1} << basis.L)) throw SizeError("to_sector: size mismatch");
  Vector out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) out(k) = v(basis.states[k]);
  return out;
}

Spectrum exact_diagonalize(const ChainParams& p, std::optional<int> M) {
  validate(p);
  Spectrum out;
  out.M = M;
  Eigensystem es;
  if (M) {
    es = hermitian_eig(xxz_sector(p, sector_basis(p.L, *M)));
  } else {
    es = hermitian_eig(xxz_full(p));
  }
  out.energies = es.values;
  out.vectors = es.vectors;
  return out;
}

Vector magnon_state(int L, double p) {
  if (L < 1) throw DomainError("magnon_state: L < 1");
  const double k = p * L / (2.0 * kPi);
  if (std::abs(k - std::round(k)) > 1e-10) throw DomainError("magnon_state: p is not quantized as 2 pi k / L");
  Vector v(L);
  for (int l = 1; l <= L; ++l) v(l - 1) = std::exp(-kI * (p * l)) / std::sqrt(static_cast<double>(L));
  return v;
}

namespace {

// Least-squares fit of target onto J*X + (J Delta)*Z + h*F, the three independent pieces of H.
ConjugationImage match_parameters(const Matrix& target, int L) {
  const std::size_t dim = std::size_t{1} << L;
  Matrix X = Matrix::Zero(dim, dim), Z = Matrix::Zero(dim, dim);
  const Matrix hop = local_xxz_block(1.0, 0.0);
  const Matrix zz = local_xxz_block(1.0, 1.0) - hop;
  for (int l = 1; l <= L; ++l) {
    X += embed_two_site(hop, l, L);
    Z += embed_two_site(zz, l, L);
  }
  const Matrix F = -total_sz(L);
  Eigen::MatrixXcd A(target.size(), 3);
  A.col(0) = Eigen::Map<const Vector>(X.data(), X.size());
  A.col(1) = Eigen::Map<const Vector>(Z.data(), Z.size());
  A.col(2) = Eigen::Map<const Vector>(F.data(), F.size());
  const Vector y = Eigen::Map<const Vector>(target.data(), target.size());
  const Vector c = A.colPivHouseholderQr().solve(y);
  ConjugationImage img;
  img.residual = (A * c - y).norm() / std::max(1.0, y.norm());
  const double J = c(0).real();
  const double JD = c(1).real();
  const double h = c(2).real();
  const double imag = c.imag().cwiseAbs().maxCoeff();
  img.found = img.residual <= 1e-12 && imag <= 1e-12 && std::abs(J) > 1e-12;
  if (img.found) img.image = {L, J, JD / J, h};
  return img;
}

}  // namespace

ConjugationReport symmetry_conjugations(const ChainParams& p) {
  validate(p);
  if (p.L % 2 != 0) throw DomainError("symmetry_conjugations: sublattice rotation needs even L");
  const Matrix H = xxz_full(p);
  const std::size_t dim = std::size_t{1} << p.L;
  Matrix V = identity(dim);
  for (int l = 2; l <= p.L; l += 2) V = V * embed_site(0.5 * pauli::z(), l, p.L);
  Matrix W = identity(dim);
  for (int l = 1; l <= p.L; ++l) W = W * embed_site(0.5 * pauli::x(), l, p.L);
  ConjugationReport r;
  r.v = match_parameters(V * H * V.inverse(), p.L);
  r.w = match_parameters(W * H * W.inverse(), p.L);
  return r;
}

}  // namespace bethe
