#pragma once

#include <optional>

#include "bethelab/cba.hpp"

namespace bethe {

// phi_s(lambda) with e^{i phi_s} = sinh(lambda + i gamma s) / sinh(lambda - i gamma s), phi_s(0) = pi.
double phi(double s, double lambda, double gamma);
double phi_prime(double s, double lambda, double gamma);
// Same with the rational limit for the xxx family: e^{i phi_s} = (lambda + i s) / (lambda - i s).
double phi(double s, double lambda, const RapidityFamily& f);
double phi_prime(double s, double lambda, const RapidityFamily& f);

// Real branches used by the log-form equations: p(lambda) = 2 pi - phi_{1/2}, theta(x) = phi_1(x) - pi (odd).
double real_momentum(double lambda, const RapidityFamily& f);
double real_momentum_prime(double lambda, const RapidityFamily& f);
double theta_hat(double x, const RapidityFamily& f);
double theta_hat_prime(double x, const RapidityFamily& f);

// Log form: L p(lambda_m) - 2 pi I_m - (M-1) pi + sum_{n != m} theta(lambda_m - lambda_n) = 0.
Eigen::VectorXd log_bae_residual(const Eigen::VectorXd& lambda, int L, const std::vector<int>& I, const RapidityFamily& f);

struct YangYangEval {
  double value = 0.0;  // defined up to an additive constant
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};
YangYangEval yang_yang(const Eigen::VectorXd& lambda, int L, const std::vector<int>& I, const RapidityFamily& f);

struct BaeSolution {
  std::vector<cplx> lambda;
  std::vector<cplx> p;
  std::vector<int> I;  // empty for complex solves
  RapidityFamily family;
  double residual_log = 0.0;
  double residual_product = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string note;

  double energy() const;  // eps_M = sum (Delta - cos p_m)
  cplx total_momentum() const;
};

struct SolveOptions {
  int max_iter = caps::max_newton_iter;
  double tol_log = 1e-10;
  double tol_product = 1e-9;
  std::optional<Eigen::VectorXd> start;
};

std::vector<std::vector<int>> quantum_number_sets(int L, int M);

BaeSolution solve_real(int L, const std::vector<int>& I, const RapidityFamily& f, const SolveOptions& opt = {});
BaeSolution solve_real(int L, int M, const std::vector<int>& I, double gamma, const SolveOptions& opt = {});
std::vector<BaeSolution> enumerate_real(int L, int M, const RapidityFamily& f, int threads = 1);

// Newton on log(e^{-i p_m L} / prod_n S(p_n, p_m)) in the quasimomenta; seeds are rapidities.
BaeSolution solve_complex(int L, const std::vector<cplx>& seeds, double Delta, const SolveOptions& opt = {});

struct XxxForms {
  std::vector<cplx> p;
  std::vector<cplx> eps1;
  std::vector<cplx> residuals;  // ((l+i/2)/(l-i/2))^L - prod (l_m - l_n + i)/(l_m - l_n - i)
};
XxxForms xxx_forms(const std::vector<cplx>& lambda, int L);
// ratio^L - prod S in rapidity form, any family.
std::vector<cplx> rapidity_bae_residual(const std::vector<cplx>& lambda, int L, const RapidityFamily& f);

}  // namespace bethe
