#include <gtest/gtest.h>

#include "bethelab/bae.hpp"
#include "bethelab/qism.hpp"
#include "bethelab/sixvertex.hpp"
#include "bethelab/spinchain.hpp"
#include "oracles.hpp"

using namespace bethe;

namespace {

VertexWeights random_weights(std::mt19937_64& rng) {
  return {oracle::random_cplx(rng), oracle::random_cplx(rng), oracle::random_cplx(rng)};
}

std::uint64_t occupied(std::initializer_list<int> sites, int L) {
  std::uint64_t s = 0;
  for (int l : sites) s |= std::uint64_t{1} << (L - l);
  return s;
}

}  // namespace

TEST(Delta, Values) {
  EXPECT_NEAR(std::abs(delta_of({2.0, 2.0, 2.0}) - 0.5), 0.0, 1e-15);
  auto rng = stream_rng(41);
  const auto f = WeightFamily::trigonometric(0.9);
  for (int t = 0; t < 10; ++t) {
    const auto w = weights_at(f, oracle::random_cplx(rng));
    EXPECT_LT(std::abs(delta_of(w) - std::cos(0.9)), 1e-13);
    const cplx r = oracle::random_cplx(rng);
    EXPECT_LT(std::abs(delta_of({r * w.a, r * w.b, r * w.c}) - delta_of(w)), 1e-13);
  }
  EXPECT_THROW(delta_of({1.0, 0.0, 1.0}), DomainError);
}

TEST(Weights, SpecialPoints) {
  const auto w = weights_at(WeightFamily::trigonometric(0.7, 1.3), 0.0);
  EXPECT_LT(std::abs(w.a - w.c), 1e-15);
  EXPECT_EQ(w.b, cplx(0.0));
  const auto r = weights_at(WeightFamily::rational(), 0.0);
  EXPECT_EQ(r.a, kI);
  EXPECT_EQ(r.b, cplx(0.0));
  EXPECT_EQ(r.c, kI);
  const auto r2 = weights_at(WeightFamily::rational(), cplx(0.3, 0.2));
  EXPECT_LT(std::abs(delta_of(r2) - 1.0), 1e-14);
}

TEST(TransferMatrix, ThreeSiteEntries) {
  auto rng = stream_rng(42);
  for (int t = 0; t < 3; ++t) {
    const auto w = random_weights(rng);
    const Matrix tm = transfer_matrix(w, 3);
    const auto in = occupied({1, 2}, 3), out = occupied({2, 3}, 3);
    EXPECT_LT(std::abs(tm(out, in) - w.a * w.c * w.c), 1e-14);
    EXPECT_LT(std::abs(tm(in, in) - (w.a * w.b * w.b + w.a * w.a * w.b)), 1e-14);
  }
}

TEST(TransferMatrix, RowSumOracleAndLineConservation) {
  auto rng = stream_rng(43);
  for (int L = 1; L <= 5; ++L) {
    const auto w = random_weights(rng);
    const Matrix tm = transfer_matrix(w, L);
    EXPECT_LT((tm - transfer_matrix_rowsum(w, L)).norm(), 1e-13 * tm.norm());
    for (std::uint64_t i = 0; i < (1u << L); ++i)
      for (std::uint64_t j = 0; j < (1u << L); ++j)
        if (std::popcount(i) != std::popcount(j)) EXPECT_EQ(tm(i, j), cplx(0.0));
    // empty row: all-a, or the horizontal line fully occupied with b everywhere
    EXPECT_LT(std::abs(tm(0, 0) - (std::pow(w.a, L) + std::pow(w.b, L))), 1e-14);
  }
}

TEST(Partition, SingleSite) {
  const VertexWeights w{cplx(0.3, 0.1), cplx(-0.7, 0.4), cplx(1.1, 0.0)};
  EXPECT_LT(std::abs(partition_trace(w, 1, 1) - 2.0 * (w.a + w.b)), 1e-15);
  EXPECT_LT(std::abs(partition_bruteforce(w, 1, 1) - 2.0 * (w.a + w.b)), 1e-15);
}

TEST(Partition, TraceMatchesBruteForce) {
  auto rng = stream_rng(44);
  for (auto [L, K] : {std::pair{1, 2}, {2, 1}, {2, 2}, {3, 2}, {2, 3}, {3, 3}, {2, 5}}) {
    const auto w = random_weights(rng);
    const cplx zt = partition_trace(w, L, K), zb = partition_bruteforce(w, L, K, 3);
    EXPECT_LT(std::abs(zt - zb) / std::abs(zt), 1e-10) << L << "x" << K;
    const cplx r = oracle::random_cplx(rng);
    const cplx zr = partition_trace({r * w.a, r * w.b, r * w.c}, L, K);
    EXPECT_LT(std::abs(zr - std::pow(r, L * K) * zt) / std::abs(zr), 1e-12);
  }
}

TEST(Partition, AllCGroundStates) {
  const VertexWeights w{0.0, 0.0, 1.3};
  EXPECT_LT(std::abs(partition_bruteforce(w, 2, 2) - 2.0 * std::pow(1.3, 4)), 1e-12);
  EXPECT_LT(std::abs(partition_bruteforce(w, 2, 4) - 2.0 * std::pow(1.3, 8)), 1e-12);
  EXPECT_EQ(partition_bruteforce(w, 3, 2), cplx(0.0));
  EXPECT_EQ(partition_bruteforce(w, 2, 3), cplx(0.0));
  EXPECT_THROW(partition_bruteforce(w, 3, 4), SizeError);
}

TEST(LambdaCba, VacuumAndBaeForms) {
  auto rng = stream_rng(45);
  const auto w = random_weights(rng);
  EXPECT_LT(std::abs(lambda_cba(w, {}, 4) - (std::pow(w.a, 4) + std::pow(w.b, 4))), 1e-14);
  const double D = 0.35;
  const VertexWeights wd{1.0, 1.0, std::sqrt(2.0 - 2.0 * D)};
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int t = 0; t < 10; ++t) {
    const std::vector<cplx> p{u(rng), u(rng), u(rng)};
    std::vector<cplx> z;
    for (cplx q : p) z.push_back(std::exp(-kI * q));
    const auto a = sixvertex_bae_residual(wd, z, 5);
    const auto b = bae_residual_product_form(5, p, D);
    for (int m = 0; m < 3; ++m) EXPECT_LT(std::abs(a[m] - b[m]), 1e-12);
    const auto s = sixvertex_bae_residual(wd, {z[1], z[0], z[2]}, 5);
    EXPECT_LT(std::abs(s[0] - a[1]), 1e-14);
  }
  for (int k = 0; k < 5; ++k) EXPECT_LT(std::abs(sixvertex_bae_residual(wd, {std::exp(2.0 * kPi * kI * (k / 5.0))}, 5)[0]), 1e-13);
}

TEST(LambdaCba, PolesCancelOnShell) {
  const int L = 6;
  const double g = kPi / 3.0;
  const auto f = WeightFamily::trigonometric(g);
  const auto sol = solve_real(L, 2, {1, 3}, g);
  ASSERT_TRUE(sol.converged);
  std::vector<cplx> z;
  for (cplx q : sol.p) z.push_back(std::exp(-kI * q));
  const cplx ustar = u_of_lambda(f, sol.lambda[0]);  // b(u*)/a(u*) = z_1
  const double eps = 1e-5;
  auto residue = [&](const std::vector<cplx>& zz) {
    return eps * std::abs(lambda_cba(weights_at(f, ustar + eps), zz, L) - lambda_cba(weights_at(f, ustar - eps), zz, L));
  };
  EXPECT_LT(residue(z), 1e-8);
  EXPECT_GT(residue({z[0], z[1] * std::exp(kI * 0.3)}), 1e-3);
}
