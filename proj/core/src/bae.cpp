#include "bethelab/bae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bethe {

namespace {

void check_phi_range(double s, double gamma) {
  if (!(gamma * s > 0.0 && gamma * s < kPi)) throw DomainError("phi: gamma*s must lie in (0, pi)");
}

double real_gamma(const RapidityFamily& f) {
  if (f.kind == Family::xxx) return 0.0;
  if (std::abs(f.gamma.imag()) > 0.0) throw DomainError("real-rapidity branch needs real gamma");
  return f.gamma.real();
}

}  // namespace

double phi(double s, double lambda, double gamma) {
  check_phi_range(s, gamma);
  // 2 arg sinh(lambda + i gamma s), with the positive factor cosh(lambda) divided out
  return 2.0 * std::atan2(std::sin(gamma * s), std::tanh(lambda) * std::cos(gamma * s));
}

double phi_prime(double s, double lambda, double gamma) {
  check_phi_range(s, gamma);
  return -2.0 * std::sin(2.0 * gamma * s) / (std::cosh(2.0 * lambda) - std::cos(2.0 * gamma * s));
}

double phi(double s, double lambda, const RapidityFamily& f) {
  if (f.kind == Family::xxx) return 2.0 * std::atan2(s, lambda);
  return phi(s, lambda, real_gamma(f));
}

double phi_prime(double s, double lambda, const RapidityFamily& f) {
  if (f.kind == Family::xxx) return -2.0 * s / (lambda * lambda + s * s);
  return phi_prime(s, lambda, real_gamma(f));
}

double real_momentum(double lambda, const RapidityFamily& f) { return 2.0 * kPi - phi(0.5, lambda, f); }
double real_momentum_prime(double lambda, const RapidityFamily& f) { return -phi_prime(0.5, lambda, f); }
double theta_hat(double x, const RapidityFamily& f) { return phi(1.0, x, f) - kPi; }
double theta_hat_prime(double x, const RapidityFamily& f) { return phi_prime(1.0, x, f); }

Eigen::VectorXd log_bae_residual(const Eigen::VectorXd& lambda, int L, const std::vector<int>& I, const RapidityFamily& f) {
  const Eigen::Index M = lambda.size();
  if (static_cast<Eigen::Index>(I.size()) != M) throw SizeError("log_bae_residual: |I| != M");
  Eigen::VectorXd G(M);
  for (Eigen::Index m = 0; m < M; ++m) {
    double g = L * real_momentum(lambda(m), f) - 2.0 * kPi * I[m] - (M - 1) * kPi;
    for (Eigen::Index n = 0; n < M; ++n)
      if (n != m) g += theta_hat(lambda(m) - lambda(n), f);
    G(m) = g;
  }
  return G;
}

namespace {

Eigen::MatrixXd yy_hessian(const Eigen::VectorXd& lambda, int L, const RapidityFamily& f) {
  const Eigen::Index M = lambda.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(M, M);
  for (Eigen::Index m = 0; m < M; ++m) {
    h(m, m) += L * real_momentum_prime(lambda(m), f);
    for (Eigen::Index n = 0; n < M; ++n) {
      if (n == m) continue;
      const double w = theta_hat_prime(lambda(m) - lambda(n), f);
      h(m, m) += w;
      h(m, n) -= w;
    }
  }
  return h;
}

}  // namespace

YangYangEval yang_yang(const Eigen::VectorXd& lambda, int L, const std::vector<int>& I, const RapidityFamily& f) {
  using boost::math::quadrature::gauss_kronrod;
  const Eigen::Index M = lambda.size();
  YangYangEval y;
  y.grad = log_bae_residual(lambda, L, I, f);
  y.hess = yy_hessian(lambda, L, f);
  auto prim = [](auto&& fn, double x) { return gauss_kronrod<double, 31>::integrate(fn, 0.0, x, 8, 1e-14); };
  auto p_fn = [&](double x) { return real_momentum(x, f); };
  auto t_fn = [&](double x) { return theta_hat(x, f); };
  for (Eigen::Index m = 0; m < M; ++m) {
    y.value += L * prim(p_fn, lambda(m)) - (2.0 * kPi * I[m] + (M - 1) * kPi) * lambda(m);
    for (Eigen::Index n = m + 1; n < M; ++n) y.value += prim(t_fn, lambda(m) - lambda(n));
  }
  return y;
}

double BaeSolution::energy() const { return dispersion(p, family.delta()); }

cplx BaeSolution::total_momentum() const {
  cplx s = 0.0;
  for (cplx q : p) s += q;
  return s;
}

std::vector<std::vector<int>> quantum_number_sets(int L, int M) {
  std::vector<std::vector<int>> out;
  for (const auto& cfg : sector_basis(L, M).configs) {
    std::vector<int> I(cfg.size());
    for (std::size_t m = 0; m < cfg.size(); ++m) I[m] = cfg[m] - 1;
    out.push_back(I);
  }
  return out;
}

namespace {

void finish_product_check(BaeSolution& s, int L) {
  const double Delta = s.family.delta();
  s.p.clear();
  for (cplx l : s.lambda) s.p.push_back(momentum_of(l, s.family));
  try {
    const auto r = bae_residual_product_form(L, s.p, Delta);
    s.residual_product = 0.0;
    for (cplx v : r) s.residual_product = std::max(s.residual_product, std::abs(v));
  } catch (const PoleError&) {
    s.residual_product = std::numeric_limits<double>::infinity();
    s.note = "product form hits an S-matrix pole";
  }
}

Eigen::VectorXd initial_guess(int L, const std::vector<int>& I, const RapidityFamily& f) {
  const int M = static_cast<int>(I.size());
  const double g = real_gamma(f);
  const double lo = f.kind == Family::xxx ? 0.0 : g, hi = 2.0 * kPi - lo;
  const double margin = 0.05 * (hi - lo) / (M + 1);
  Eigen::VectorXd x(M);
  for (int m = 0; m < M; ++m) {
    double p = (2.0 * kPi * I[m] + (M - 1) * kPi) / L;
    p = std::clamp(p, lo + margin * (m + 1), hi - margin * (M - m));
    x(m) = rapidity_of(p, f).real();
  }
  return x;
}

}  // namespace

BaeSolution solve_real(int L, const std::vector<int>& I, const RapidityFamily& f, const SolveOptions& opt) {
  const int M = static_cast<int>(I.size());
  if (M > L) throw DomainError("solve_real: M > L");
  for (int m = 0; m < M; ++m) {
    if (I[m] < 0 || I[m] > L - 1 || (m > 0 && I[m] <= I[m - 1]))
      throw DomainError("solve_real: quantum numbers must be strictly increasing in [0, L-1]");
  }
  if (f.kind == Family::xxz) {
    const double g = real_gamma(f);
    if (!(g > 0.0 && g < kPi / 2.0)) throw DomainError("solve_real: need 0 < gamma < pi/2");
  }
  BaeSolution s;
  s.I = I;
  s.family = f;
  if (M == 0) {
    s.converged = true;
    return s;
  }
  Eigen::VectorXd x = opt.start ? *opt.start : initial_guess(L, I, f);
  if (x.size() != M) throw SizeError("solve_real: start vector has wrong size");
  Eigen::VectorXd G = log_bae_residual(x, L, I, f);
  int it = 0;
  for (; it < opt.max_iter && G.lpNorm<Eigen::Infinity>() >= opt.tol_log; ++it) {
    Eigen::VectorXd d = yy_hessian(x, L, f).fullPivLu().solve(-G);
    if (!d.allFinite()) d = -G;
    const double dmax = d.lpNorm<Eigen::Infinity>();
    if (dmax > 2.0) d *= 2.0 / dmax;
    double t = 1.0;
    const double g0 = G.norm();
    Eigen::VectorXd xn, Gn;
    while (true) {
      xn = x + t * d;
      Gn = log_bae_residual(xn, L, I, f);
      if (Gn.norm() < (1.0 - 1e-4 * t) * g0 || t < 1e-12) break;
      t *= 0.5;
    }
    if (!(Gn.norm() < g0)) {
      s.note = "line search stalled";
      break;
    }
    x = xn;
    G = Gn;
    if (x.lpNorm<Eigen::Infinity>() > 40.0) {
      s.note = "rapidities run off to infinity";
      break;
    }
  }
  s.iterations = it;
  s.residual_log = G.lpNorm<Eigen::Infinity>();
  s.lambda.assign(x.data(), x.data() + M);
  finish_product_check(s, L);
  if (s.note.empty() && s.residual_log >= opt.tol_log) s.note = "no convergence within max_iter";
  if (s.note.empty() && x.lpNorm<Eigen::Infinity>() > 10.0) s.note = "rapidity at infinity";
  const bool distinct = !coincident(std::vector<cplx>(s.lambda), 1e-8);
  if (!distinct && s.note.empty()) s.note = "coincident rapidities";
  s.converged = s.note.empty() && s.residual_log < opt.tol_log && s.residual_product < opt.tol_product;
  if (!s.converged && s.note.empty()) s.note = "product-form residual above tolerance";
  return s;
}

BaeSolution solve_real(int L, int M, const std::vector<int>& I, double gamma, const SolveOptions& opt) {
  if (static_cast<int>(I.size()) != M) throw DomainError("solve_real: |I| != M");
  return solve_real(L, I, RapidityFamily::xxz(gamma), opt);
}

std::vector<BaeSolution> enumerate_real(int L, int M, const RapidityFamily& f, int threads) {
  const auto sets = quantum_number_sets(L, M);
  std::vector<BaeSolution> out(sets.size());
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(sets.size())));
  auto work = [&](int t) {
    for (std::size_t k = t; k < sets.size(); k += nt) out[k] = solve_real(L, sets[k], f);
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

cplx ds_dfirst(cplx p, cplx pp) { return -kI * std::exp(-kI * (p + pp)); }
cplx ds_dsecond(cplx p, cplx pp, double Delta) {
  return 2.0 * kI * Delta * std::exp(-kI * pp) - kI * std::exp(-kI * (p + pp));
}

Vector complex_residual(const Vector& p, int L, double Delta) {
  const Eigen::Index M = p.size();
  Vector F(M);
  for (Eigen::Index m = 0; m < M; ++m) {
    cplx prod = 1.0;
    for (Eigen::Index n = 0; n < M; ++n)
      if (n != m) prod *= two_body_s(p(n), p(m), Delta);
    F(m) = std::log(std::exp(-kI * p(m) * static_cast<double>(L)) / prod);
  }
  return F;
}

Matrix complex_jacobian(const Vector& p, int L, double Delta) {
  const Eigen::Index M = p.size();
  Matrix J = Matrix::Zero(M, M);
  for (Eigen::Index m = 0; m < M; ++m) {
    J(m, m) = -kI * static_cast<double>(L);
    for (Eigen::Index n = 0; n < M; ++n) {
      if (n == m) continue;
      // log S(p_n, p_m) = log s(p_n, p_m) - log s(p_m, p_n) + i pi
      const cplx snm = s_aux(p(n), p(m), Delta), smn = s_aux(p(m), p(n), Delta);
      const cplx d_pn = ds_dfirst(p(n), p(m)) / snm - ds_dsecond(p(m), p(n), Delta) / smn;
      const cplx d_pm = ds_dsecond(p(n), p(m), Delta) / snm - ds_dfirst(p(m), p(n)) / smn;
      J(m, n) -= d_pn;
      J(m, m) -= d_pm;
    }
  }
  return J;
}

}  // namespace

BaeSolution solve_complex(int L, const std::vector<cplx>& seeds, double Delta, const SolveOptions& opt) {
  BaeSolution s;
  s.family = RapidityFamily::from_delta(Delta);
  const int M = static_cast<int>(seeds.size());
  if (M > L) throw DomainError("solve_complex: M > L");
  Vector p(M);
  for (int m = 0; m < M; ++m) p(m) = momentum_of(seeds[m], s.family);
  int it = 0;
  Vector F;
  try {
    F = complex_residual(p, L, Delta);
    for (; it < opt.max_iter && F.lpNorm<Eigen::Infinity>() >= 1e-13; ++it) {
      const Matrix J = complex_jacobian(p, L, Delta);
      Eigen::FullPivLU<Matrix> lu(J);
      if (!lu.isInvertible()) {
        s.note = "singular Jacobian";
        break;
      }
      Vector d = lu.solve(-F);
      const double dmax = d.cwiseAbs().maxCoeff();
      if (dmax > 1.0) d *= 1.0 / dmax;
      double t = 1.0;
      const double f0 = F.norm();
      Vector pn, Fn;
      bool ok = false;
      while (t > 1e-12) {
        pn = p + t * d;
        try {
          Fn = complex_residual(pn, L, Delta);
          if (Fn.allFinite() && Fn.norm() < (1.0 - 1e-4 * t) * f0) {
            ok = true;
            break;
          }
        } catch (const PoleError&) {
        }
        t *= 0.5;
      }
      if (!ok) {
        if (F.lpNorm<Eigen::Infinity>() >= opt.tol_product) s.note = "line search stalled";
        break;
      }
      p = pn;
      F = Fn;
    }
  } catch (const PoleError& e) {
    s.note = std::string("pole: ") + e.what();
  }
  s.iterations = it;
  s.residual_log = F.size() ? F.lpNorm<Eigen::Infinity>() : std::numeric_limits<double>::infinity();
  s.p.assign(p.data(), p.data() + M);
  for (int m = 0; m < M; ++m) {
    cplx q = p(m);
    q.real(std::fmod(q.real(), 2.0 * kPi));
    if (q.real() < 0.0) q += 2.0 * kPi;
    s.p[m] = q;
    s.lambda.push_back(rapidity_of(q, s.family));
  }
  try {
    const auto r = bae_residual_product_form(L, s.p, Delta);
    for (cplx v : r) s.residual_product = std::max(s.residual_product, std::abs(v));
  } catch (const PoleError&) {
    s.residual_product = std::numeric_limits<double>::infinity();
  }
  if (s.note.empty() && s.residual_product >= opt.tol_product) s.note = "no convergence within max_iter";
  if (s.note.empty() && coincident(s.p)) s.note = "coincident quasimomenta";
  if (s.note.empty() && std::abs(s.total_momentum().imag()) >= 1e-8) s.note = "total momentum not real";
  s.converged = s.note.empty();
  return s;
}

std::vector<cplx> rapidity_bae_residual(const std::vector<cplx>& lambda, int L, const RapidityFamily& f) {
  const std::size_t M = lambda.size();
  std::vector<cplx> out(M);
  for (std::size_t m = 0; m < M; ++m) {
    cplx prod = 1.0;
    for (std::size_t n = 0; n < M; ++n)
      if (n != m) prod *= s_from_rapidities(lambda[n], lambda[m], f);
    out[m] = std::exp(-kI * momentum_of(lambda[m], f) * static_cast<double>(L)) - prod;
  }
  return out;
}

XxxForms xxx_forms(const std::vector<cplx>& lambda, int L) {
  const auto f = RapidityFamily::xxx();
  XxxForms out;
  for (cplx l : lambda) {
    out.p.push_back(momentum_of(l, f));
    out.eps1.push_back(energy_of(l, f));
  }
  out.residuals = rapidity_bae_residual(lambda, L, f);
  return out;
}

}  // namespace bethe
