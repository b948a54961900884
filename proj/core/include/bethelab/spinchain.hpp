#pragma once

#include <optional>
#include <unordered_map>

#include "bethelab/types.hpp"

namespace bethe {

// H = -J/2 sum_l (S+_l S-_{l+1} + S-_l S+_{l+1} + 2 Delta Sz_l Sz_{l+1}) - h sum_l Sz_l, periodic.
struct ChainParams {
  int L = 2;
  double J = 1.0;
  double Delta = 1.0;
  double h = 0.0;
};

void validate(const ChainParams& p);
double vacuum_energy(const ChainParams& p);

// Sector with M down spins; configurations are strictly increasing 1-based sites.
struct SectorBasis {
  int L = 0;
  int M = 0;
  std::vector<std::vector<int>> configs;
  std::vector<std::uint64_t> states;  // full-space basis index of each config
  std::unordered_map<std::uint64_t, std::size_t> index;

  std::size_t size() const { return configs.size(); }
  std::size_t find(std::uint64_t state) const;
};

SectorBasis sector_basis(int L, int M);
std::uint64_t state_of(const std::vector<int>& config, int L);
std::uint64_t binomial(int n, int k);

Matrix local_xxz_block(double J, double Delta);

struct XxzHamiltonian {
  Matrix full;
  std::vector<SectorBasis> bases;  // M = 0..L
  std::vector<Matrix> blocks;
};

XxzHamiltonian build_xxz(const ChainParams& p);
Matrix xxz_full(const ChainParams& p);
// Built from the hopping rule directly in the coordinate basis.
Matrix xxz_sector(const ChainParams& p, const SectorBasis& basis);

Matrix total_sz(int L);
Matrix total_s_plus(int L);
Matrix shift_operator(int L);
Matrix ising_diagonal(int L);

Vector to_full(const Vector& sector_vec, const SectorBasis& basis);
Vector to_sector(const Vector& full_vec, const SectorBasis& basis);

struct Spectrum {
  Eigen::VectorXd energies;
  Matrix vectors;
  std::optional<int> M;
};
Spectrum exact_diagonalize(const ChainParams& p, std::optional<int> M = std::nullopt);

// Sector-1 amplitudes e^{-ipl}/sqrt(L); p must be 2 pi k / L.
Vector magnon_state(int L, double p);

struct ConjugationImage {
  bool found = false;
  ChainParams image;
  double residual = 0.0;
};
struct ConjugationReport {
  ConjugationImage v;  // V = prod_l Sz_{2l}
  ConjugationImage w;  // W = prod_l Sx_l
};
ConjugationReport symmetry_conjugations(const ChainParams& p);

}  // namespace bethe
