#include "bethelab/qism.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "bethelab/bae.hpp"
#include "bethelab/spinchain.hpp"
#include "bethelab/tensor.hpp"

namespace bethe {

Matrix lax(const VertexWeights& w) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = w.a;
  m(1, 1) = m(2, 2) = w.b;
  m(1, 2) = m(2, 1) = w.c;
  return m;
}

Matrix lax(const WeightFamily& f, cplx u) { return lax(weights_at(f, u)); }

Matrix lax_sigma_form(const WeightFamily& f, cplx u) {
  const VertexWeights w = weights_at(f, u);
  using namespace pauli;
  return 0.5 * (w.a + w.b) * identity(4) + 0.5 * (w.a - w.b) * kron(z(), z()) +
         w.c * (kron(plus(), minus()) + kron(minus(), plus()));
}

Matrix r_matrix(const WeightFamily& f, cplx w) { return lax(f, w); }

double ybe_residual(const WeightFamily& f, cplx u, cplx v, cplx w) {
  const Matrix ab = embed_pair(r_matrix(f, u - v), 1, 2, 3);
  const Matrix ac = embed_pair(r_matrix(f, u - w), 1, 3, 3);
  const Matrix bc = embed_pair(r_matrix(f, v - w), 2, 3, 3);
  return (ab * ac * bc - bc * ac * ab).norm();
}

double fcr_residual(const WeightFamily& f, cplx u, cplx v) {
  const Matrix r = embed_pair(r_matrix(f, u - v), 1, 2, 3);
  const Matrix la = embed_pair(lax(f, u), 1, 3, 3);
  const Matrix lb = embed_pair(lax(f, v), 2, 3, 3);
  return (r * la * lb - lb * la * r).norm();
}

FcrReport fcr_three_equations(const VertexWeights& w1, const VertexWeights& w2) {
  FcrReport rep;
  rep.delta1 = delta_of(w1);
  rep.delta2 = delta_of(w2);
  if (std::abs(rep.delta1 - rep.delta2) > 1e-10) {
    throw DomainError("fcr_three_equations: Delta mismatch (" + std::to_string(rep.delta1.real()) + "," +
                      std::to_string(rep.delta1.imag()) + ") vs (" + std::to_string(rep.delta2.real()) + "," +
                      std::to_string(rep.delta2.imag()) + ")");
  }
  const cplx a = w1.a, b = w1.b, c = w1.c, a1 = w2.a, b1 = w2.b, c1 = w2.c;
  // a b' c'' + c c' b'' = b a' c'',  a c' b'' + c b' c'' = b c' a'',  a c' c'' + c b' b'' = c a' a''
  Eigen::Matrix3cd sys;
  sys << 0.0, c * c1, a * b1 - b * a1,
         -b * c1, a * c1, c * b1,
         -c * a1, c * b1, a * c1;
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  rep.singular_gap = sv(2) / sv(0);
  Eigen::Vector3cd x = svd.matrixV().col(2);
  if (std::abs(x(2)) > 0.0) x *= std::abs(x(2)) / x(2);
  rep.solution = {x(0), x(1), x(2)};
  rep.residual = (sys * x).norm();
  rep.delta_solution = delta_of(rep.solution);
  return rep;
}

namespace {

// Multiplies rows by the twist phase of the given qubit factor.
void apply_twist(Matrix& m, int factor, int n, double theta) {
  if (theta == 0.0) return;
  const cplx up = std::exp(0.5 * kI * theta), down = std::exp(-0.5 * kI * theta);
  for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) *= site_bit(static_cast<std::uint64_t>(r), factor, n) ? down : up;
}

std::vector<Matrix> site_laxes(const WeightFamily& f, cplx u, int L, const std::vector<cplx>& mu) {
  if (!mu.empty() && static_cast<int>(mu.size()) != L) throw SizeError("inhomogeneities: |mu| != L");
  std::vector<Matrix> out;
  for (int l = 0; l < L; ++l) out.push_back(lax(f, u - (mu.empty() ? cplx(0.0) : mu[l])));
  return out;
}

void check_sites(int L, int extra) {
  if (L < 1 || L + extra > caps::monodromy_sites + 1) throw SizeError("monodromy: L out of range");
}

}  // namespace

double rtt_residual(const WeightFamily& f, cplx u, cplx v, int L, double theta) {
  check_sites(L, 2);
  const int n = L + 2;
  Matrix ta = identity(std::size_t{1} << n), tb = ta;
  for (int l = 1; l <= L; ++l) {
    apply_pair_left(lax(f, u), 1, l + 2, n, ta);
    apply_pair_left(lax(f, v), 2, l + 2, n, tb);
  }
  apply_twist(ta, 1, n, theta);
  apply_twist(tb, 2, n, theta);
  const Matrix r = embed_pair(r_matrix(f, u - v), 1, 2, n);
  return (r * ta * tb - tb * ta * r).norm();
}

Matrix lax_product(const std::vector<Matrix>& laxes) {
  const int L = static_cast<int>(laxes.size());
  check_sites(L, 1);
  Matrix m = identity(std::size_t{1} << (L + 1));
  for (int l = 1; l <= L; ++l) apply_pair_left(laxes[l - 1], 1, l + 1, L + 1, m);
  return m;
}

Monodromy monodromy(const WeightFamily& f, cplx u, int L, double theta, std::vector<cplx> mu) {
  Monodromy m;
  m.op = lax_product(site_laxes(f, u, L, mu));
  apply_twist(m.op, 1, L + 1, theta);
  m.u = u;
  m.theta = theta;
  m.mu = std::move(mu);
  m.L = L;
  return m;
}

AbcdBlocks abcd(const Monodromy& m) {
  const Eigen::Index h = Eigen::Index{1} << m.L;
  return {m.op.topLeftCorner(h, h), m.op.topRightCorner(h, h), m.op.bottomLeftCorner(h, h),
          m.op.bottomRightCorner(h, h), m.u};
}

Matrix transfer(const Monodromy& m) { return partial_trace_aux(m.op); }

Matrix transfer(const WeightFamily& f, cplx u, int L, double theta, const std::vector<cplx>& mu) {
  return transfer(monodromy(f, u, L, theta, mu));
}

Matrix transfer_derivative(const WeightFamily& f, cplx u, int L, const std::vector<cplx>& mu) {
  const auto base = site_laxes(f, u, L, mu);
  Matrix out = Matrix::Zero(Eigen::Index{1} << L, Eigen::Index{1} << L);
  for (int l = 0; l < L; ++l) {
    auto laxes = base;
    laxes[l] = lax(weights_prime(f, u - (mu.empty() ? cplx(0.0) : mu[l])));
    out += partial_trace_aux(lax_product(laxes));
  }
  return out;
}

YbaReport yba_residuals(const WeightFamily& f, cplx u, cplx v, int L, double theta) {
  const VertexWeights wvu = weights_at(f, v - u), wuv = weights_at(f, u - v);
  if (std::abs(wvu.b) < 1e-12 || std::abs(wuv.b) < 1e-12) throw PoleError("yba_residuals: b(u - v) = 0", {u, v});
  const AbcdBlocks x = abcd(monodromy(f, u, L, theta)), y = abcd(monodromy(f, v, L, theta));
  YbaReport r;
  const double scale = x.B.norm() * y.B.norm();
  r.bb = (x.B * y.B - y.B * x.B).norm() / scale;
  r.ab = (x.A * y.B - (wvu.a / wvu.b) * y.B * x.A + (wvu.c / wvu.b) * x.B * y.A).norm() / (x.A.norm() * y.B.norm());
  r.db = (x.D * y.B - (wuv.a / wuv.b) * y.B * x.D + (wuv.c / wuv.b) * x.B * y.D).norm() / (x.D.norm() * y.B.norm());
  return r;
}

Vector vacuum(int L) {
  Vector v = Vector::Zero(Eigen::Index{1} << L);
  v(0) = 1.0;
  return v;
}

Vector aba_state(const WeightFamily& f, const std::vector<cplx>& u, int L, double theta, const std::vector<cplx>& mu) {
  for (std::size_t m = 0; m < u.size(); ++m)
    for (std::size_t n = m + 1; n < u.size(); ++n)
      if (std::abs(u[m] - u[n]) < 1e-10) throw DomainError("aba_state: coincident spectral parameters");
  Vector psi = vacuum(L);
  for (auto it = u.rbegin(); it != u.rend(); ++it) psi = abcd(monodromy(f, *it, L, theta, mu)).B * psi;
  return psi;
}

cplx lambda_aba(const WeightFamily& f, cplx u0, const std::vector<cplx>& u, int L) {
  const VertexWeights w0 = weights_at(f, u0);
  cplx first = std::pow(w0.a, L), second = std::pow(w0.b, L);
  for (cplx um : u) {
    const VertexWeights x = weights_at(f, um - u0), y = weights_at(f, u0 - um);
    if (std::abs(x.b) < 1e-14 || std::abs(y.b) < 1e-14) throw PoleError("lambda_aba: b(u_m - u_0) = 0", {um, u0});
    first *= x.a / x.b;
    second *= y.a / y.b;
  }
  return first + second;
}

std::vector<cplx> aba_bae_residual(const WeightFamily& f, const std::vector<cplx>& u, int L) {
  const std::size_t M = u.size();
  std::vector<cplx> out(M);
  for (std::size_t m = 0; m < M; ++m) {
    const VertexWeights w = weights_at(f, u[m]);
    cplx prod = (M % 2 == 1) ? 1.0 : -1.0;
    for (std::size_t n = 0; n < M; ++n) {
      if (n == m) continue;
      const cplx den = weights_at(f, u[m] - u[n]).a;
      if (std::abs(den) < 1e-14) throw PoleError("aba_bae_residual: a(u_m - u_n) = 0", {u[m], u[n]});
      prod *= weights_at(f, u[n] - u[m]).a / den;
    }
    out[m] = std::pow(w.b / w.a, static_cast<int>(L)) - prod;
  }
  return out;
}

cplx u_of_lambda(const WeightFamily& f, cplx lambda) {
  return f.kind == WeightKind::rational ? -(lambda + 0.5 * kI) : -(lambda + 0.5 * kI * f.gamma);
}

Matrix momentum_operator(int L) {
  const Matrix U = shift_operator(L);
  const Eigen::Index dim = U.rows();
  std::vector<Matrix> powers{identity(dim)};
  for (int j = 1; j < L; ++j) powers.push_back(U * powers.back());
  Matrix P = Matrix::Zero(dim, dim);
  for (int k = 0; k < L; ++k) {
    double p = 2.0 * kPi * k / L;
    if (p > kPi + 1e-12) p -= 2.0 * kPi;
    Matrix proj = Matrix::Zero(dim, dim);
    for (int j = 0; j < L; ++j) proj += std::exp(-2.0 * kPi * kI * static_cast<double>(k * j) / static_cast<double>(L)) * powers[j];
    P += (p / L) * proj;
  }
  return P;
}

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

bool homogeneous(const std::vector<cplx>& mu) {
  return std::all_of(mu.begin(), mu.end(), [](cplx m) { return m == 0.0; });
}

}  // namespace

TraceIdentity trace_identity(const WeightFamily& f, int L, int k, const std::vector<cplx>& mu) {
  if (f.kind != WeightKind::trigonometric) throw DomainError("trace_identity: trigonometric family only");
  if (k < 0 || k > 3) throw DomainError("trace_identity: k must be 0..3");
  TraceIdentity out;
  out.k = k;
  out.t0 = transfer(f, 0.0, L, 0.0, mu);
  const VertexWeights w0 = weights_at(f, 0.0), w0p = weights_prime(f, 0.0);
  const bool homog = homogeneous(mu);
  ChainParams cp{L, 1.0, std::cos(f.gamma), 0.0};
  const Matrix H = xxz_full(cp);
  if (homog) out.t0_vs_shift = max_abs(out.t0 - std::pow(w0.c, L) * shift_operator(L));
  if (k == 0) {
    if (!homog) return out;  // t(0) is no longer a permutation
    const Matrix X = out.t0 / std::pow(w0.a, L);
    const Eigen::Index dim = X.rows();
    std::vector<Matrix> powers{identity(dim)};
    for (int j = 1; j < L; ++j) powers.push_back(X * powers.back());
    out.H = Matrix::Zero(dim, dim);
    for (int q = 0; q < L; ++q) {
      double p = 2.0 * kPi * q / L;
      if (p > kPi + 1e-12) p -= 2.0 * kPi;
      for (int j = 0; j < L; ++j)
        out.H += (p / L) * std::exp(-2.0 * kPi * kI * static_cast<double>(q * j) / static_cast<double>(L)) * powers[j];
    }
    out.closed_form = max_abs(out.H - momentum_operator(L));
  } else {
    const Eigen::PartialPivLU<Matrix> t0inv(out.t0);
    if (k == 1) {
      const Matrix dt = transfer_derivative(f, 0.0, L, mu);
      out.H = kI * t0inv.solve(dt) - kI * static_cast<double>(L) * (w0p.a / w0.a) * identity(dt.rows());
      if (homog) {
        const Matrix target = (2.0 / std::sin(f.gamma)) * (H - vacuum_energy(cp) * identity(H.rows()));
        out.closed_form = max_abs(out.H - target);
        out.closed_form_negated = max_abs(out.H + target);
      }
    } else {
      // F(u) = log(t(0)^{-1} t(u) (a(0)/a(u))^L), F(0) = 0, Richardson on central differences
      auto F = [&](double u) {
        const Matrix X = t0inv.solve(transfer(f, u, L, 0.0, mu)) * std::pow(w0.a / weights_at(f, u).a, L);
        return Matrix(X.log());
      };
      auto stencil = [&](double h) -> Matrix {
        if (k == 2) return (F(h) + F(-h)) / (h * h);
        return (F(2.0 * h) - 2.0 * F(h) + 2.0 * F(-h) - F(-2.0 * h)) / (2.0 * h * h * h);
      };
      const double h = 0.02;
      const Matrix d1 = stencil(h), d2 = stencil(h / 2), d3 = stencil(h / 4);
      const Matrix r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
      const Matrix deriv = (16.0 * r2 - r1) / 15.0;
      out.H = (k % 2 == 0 ? 1.0 : -1.0) / kI * deriv;
    }
  }
  out.hamiltonian_commutator = (out.H * H - H * out.H).norm();
  return out;
}

double yangian_residual(cplx u, cplx v, int L) {
  const auto f = WeightFamily::rational();
  const AbcdBlocks x = abcd(monodromy(f, u, L)), y = abcd(monodromy(f, v, L));
  const Matrix* tu[2][2] = {{&x.A, &x.B}, {&x.C, &x.D}};
  const Matrix* tv[2][2] = {{&y.A, &y.B}, {&y.C, &y.D}};
  const double scale = monodromy(f, u, L).op.norm() * monodromy(f, v, L).op.norm();
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const Matrix lhs = (u - v) * (*tu[i][j] * *tv[k][l] - *tv[k][l] * *tu[i][j]);
          const Matrix rhs = kI * (*tv[k][j] * *tu[i][l] - *tu[k][j] * *tv[i][l]);
          worst = std::max(worst, (lhs - rhs).norm() / scale);
        }
  return worst;
}

XxxExtras xxx_extras(int L, int M, std::uint64_t seed) {
  XxxExtras out;
  auto rng = stream_rng(seed, 7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const cplx u(uni(rng), uni(rng)), v(uni(rng), uni(rng));
    out.yangian = std::max(out.yangian, yangian_residual(u, v, 3));
  }
  const auto f = WeightFamily::rational();
  const Matrix Sp = total_s_plus(L);
  for (const auto& s : enumerate_real(L, M, RapidityFamily::xxx())) {
    if (!s.converged) continue;
    std::vector<cplx> u;
    for (cplx l : s.lambda) u.push_back(u_of_lambda(f, l));
    const Vector psi = aba_state(f, u, L);
    out.s_plus_on_shell = std::max(out.s_plus_on_shell, (Sp * psi).norm() / psi.norm());
    ++out.on_shell_states;
  }
  std::vector<cplx> u;
  for (int m = 0; m < M; ++m) u.push_back(u_of_lambda(f, uni(rng)));
  const Vector psi = aba_state(f, u, L);
  out.s_plus_off_shell = (Sp * psi).norm() / psi.norm();
  return out;
}

TwistedMeasurement measure_twisted_state(const WeightFamily& f, cplx u0, const std::vector<cplx>& u, int L, double theta,
                                         const std::vector<cplx>& mu) {
  const Vector psi = aba_state(f, u, L, theta, mu);
  const Vector tpsi = transfer(f, u0, L, theta, mu) * psi;
  TwistedMeasurement m;
  m.eigenvalue = psi.dot(tpsi) / psi.squaredNorm();
  m.residual = (tpsi - m.eigenvalue * psi).norm() / (std::abs(m.eigenvalue) * psi.norm());
  return m;
}

UnitarityReport r_unitarity(const WeightFamily& f, cplx w) {
  const Matrix P = permutation_operator();
  const Matrix X = r_matrix(f, w) * P * r_matrix(f, -w) * P;
  UnitarityReport r;
  r.factor = X(0, 0);
  r.residual = (X - r.factor * identity(4)).norm() / std::abs(r.factor);
  return r;
}

}  // namespace bethe
