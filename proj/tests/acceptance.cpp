// Acceptance checks. `acceptance` runs all of them, `acceptance N` runs one.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "bethelab/bae.hpp"
#include "bethelab/cba.hpp"
#include "bethelab/qism.hpp"
#include "bethelab/sixvertex.hpp"
#include "bethelab/spinchain.hpp"
#include "bethelab/tensor.hpp"

using namespace bethe;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> notes;  // printed indented under the verdict line

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << what << (ok ? " ok; " : " FAILED; ");
  }
};

struct Criterion {
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> run;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

cplx rnd(std::mt19937_64& rng, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

double multiset_gap(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double nearest(const Eigen::VectorXd& spectrum, double e) {
  return (spectrum.array() - e).abs().minCoeff();
}

std::vector<cplx> spectral(const BaeSolution& s, const WeightFamily& f) {
  std::vector<cplx> u;
  for (cplx l : s.lambda) u.push_back(u_of_lambda(f, l));
  return u;
}

std::vector<BaeSolution> onshell(int L, int M, const RapidityFamily& f) {
  std::vector<BaeSolution> out;
  for (auto& s : enumerate_real(L, M, f))
    if (s.converged) out.push_back(s);
  return out;
}

void c01(Outcome& o) {
  const ChainParams p{8, 1.0, 0.5, 0.0};
  const Matrix H = xxz_full(p);
  const Vector omega = Vector::Unit(H.rows(), 0);
  const double r = (H * omega - (-p.J * p.Delta * p.L / 4.0) * omega).norm();
  o.require(r < 1e-13, "|H Omega - E0 Omega| = " + sci(r));
}

void c02(Outcome& o) {
  const ChainParams p{8, 1.0, 0.5, 0.0};
  const auto sp = exact_diagonalize(p, 1);
  std::vector<double> ex;
  for (int k = 0; k < p.L; ++k) ex.push_back(vacuum_energy(p) + p.Delta - std::cos(2.0 * kPi * k / p.L));
  const double d = multiset_gap({sp.energies.data(), sp.energies.data() + sp.energies.size()}, ex);
  o.require(d < 1e-10, "M=1 multiset gap " + sci(d));
}

void c03(Outcome& o) {
  const int L = 6;
  const double g = kPi / 3.0;
  const ChainParams p{L, 1.0, std::cos(g), 0.0};
  const auto H = build_xxz(p);
  const auto full = exact_diagonalize(p);
  const auto f = RapidityFamily::xxz(g);
  std::vector<double> energies;
  double worst_state = 0.0, worst_in_ed = 0.0;
  int total = 0;
  std::map<std::string, int> failures;
  for (int M = 0; M <= L; ++M) {
    std::ostringstream bad;
    int nbad = 0;
    for (const auto& s : enumerate_real(L, M, f)) {
      ++total;
      if (!s.converged) {
        ++failures[s.note];
        bad << " " << join(s.I) << "(" << s.note << ")";
        ++nbad;
        continue;
      }
      const double E = vacuum_energy(p) + s.energy();
      energies.push_back(E);
      worst_in_ed = std::max(worst_in_ed, nearest(full.energies, E));
      const auto st = bethe_state(L, s.p, p.Delta);
      const Vector psi = to_full(st.amplitudes, st.basis);
      worst_state = std::max(worst_state, (H.full * psi - E * psi).norm() / psi.norm());
    }
    if (nbad) o.notes.push_back("M=" + std::to_string(M) + " unconverged " + std::to_string(nbad) + ":" + bad.str());
  }
  o.require(total == 64, "quantum-number sets " + std::to_string(total));
  o.require(energies.size() == 64, "converged " + std::to_string(energies.size()) + "/64");
  const double gap = multiset_gap(energies, {full.energies.data(), full.energies.data() + full.energies.size()});
  o.require(gap < 1e-8, "spectrum multiset gap " + sci(gap));
  o.require(worst_state < 1e-8, "Bethe-state H residual " + sci(worst_state));
  o.require(worst_in_ed < 1e-8, "converged energies in ED " + sci(worst_in_ed));
  for (auto& [note, n] : failures) o.detail << n << " x '" << note << "'; ";
}

void c04(Outcome& o) {
  const int L = 8;
  const double g = kPi / 3.0;
  const auto f = RapidityFamily::xxz(g);
  auto rng = stream_rng(2024, 4);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> pickM(1, 4);
  double worst_grad = 0.0, min_eig = std::numeric_limits<double>::infinity();
  int not_pd = 0;
  for (int t = 0; t < 50; ++t) {
    const int M = pickM(rng);
    const auto sets = quantum_number_sets(L, M);
    const auto& I = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
    Eigen::VectorXd lam(M);
    for (int m = 0; m < M; ++m) lam(m) = nd(rng);
    const auto y = yang_yang(lam, L, I, f);
    const double h = 1e-6;
    for (int m = 0; m < M; ++m) {
      Eigen::VectorXd lp = lam, lm = lam;
      lp(m) += h;
      lm(m) -= h;
      const double fd = (yang_yang(lp, L, I, f).value - yang_yang(lm, L, I, f).value) / (2.0 * h);
      worst_grad = std::max(worst_grad, std::abs(fd - y.grad(m)) / std::max(1.0, std::abs(y.grad(m))));
    }
    const double e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(y.hess).eigenvalues().minCoeff();
    min_eig = std::min(min_eig, e);
    if (e <= 0.0) {
      ++not_pd;
      if (not_pd <= 3) {
        std::ostringstream s;
        s << "indefinite at M=" << M << " I=" << join(I) << " lambda=(";
        for (int m = 0; m < M; ++m) s << (m ? "," : "") << lam(m);
        s << ") min eig " << sci(e);
        o.notes.push_back(s.str());
      }
    }
  }
  o.require(worst_grad < 1e-6, "gradient vs FD " + sci(worst_grad));
  o.require(not_pd == 0, "Hessian PD (" + std::to_string(not_pd) + "/50 not PD, min eig " + sci(min_eig) + ")");
}

void c05(Outcome& o) {
  auto rng = stream_rng(2024, 5);
  double ybe = 0.0, fcr = 0.0, rtt = 0.0;
  for (const auto& f : {WeightFamily::trigonometric(kPi / 5.0), WeightFamily::rational()}) {
    for (int t = 0; t < 100; ++t) {
      const cplx u = rnd(rng), v = rnd(rng), w = rnd(rng);
      ybe = std::max(ybe, ybe_residual(f, u, v, w));
      fcr = std::max(fcr, fcr_residual(f, u, v));
    }
    for (int t = 0; t < 3; ++t) rtt = std::max(rtt, rtt_residual(f, rnd(rng), rnd(rng), 4));
  }
  o.require(ybe < 1e-12, "YBE " + sci(ybe));
  o.require(fcr < 1e-12, "FCR " + sci(fcr));
  o.require(rtt < 1e-11, "RTT L=4 " + sci(rtt));
}

void c06(Outcome& o) {
  const int L = 6;
  const double g = kPi / 3.0;
  const auto f = WeightFamily::trigonometric(g);
  const Matrix H = xxz_full({L, 1.0, std::cos(g), 0.0});
  auto rng = stream_rng(2024, 6);
  double tt = 0.0, th = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Matrix a = transfer(f, rnd(rng), L), b = transfer(f, rnd(rng), L);
    tt = std::max(tt, commutator_norm(a, b) / (a.norm() * b.norm()));
    th = std::max(th, commutator_norm(a, H) / (a.norm() * H.norm()));
  }
  const Matrix a = transfer(f, rnd(rng), L), c = transfer(WeightFamily::trigonometric(1.1), rnd(rng), L);
  const double ctrl = commutator_norm(a, c) / (a.norm() * c.norm());
  o.require(tt < 1e-12, "[t(u),t(v)] " + sci(tt));
  o.require(th < 1e-12, "[t(u),H] " + sci(th));
  o.require(ctrl > 1e-3, "mismatched-gamma control " + sci(ctrl));
}

void c07(Outcome& o) {
  const auto f = WeightFamily::trigonometric(kPi / 3.0);
  const auto t0 = trace_identity(f, 6, 0);
  const auto t1 = trace_identity(f, 6, 1);
  o.require(t0.t0_vs_shift < 1e-14, "t(0) vs c^L U " + sci(t0.t0_vs_shift));
  o.require(*t1.closed_form < 1e-10, "H1 vs (2/sin g)(H - E0) " + sci(*t1.closed_form));
  o.detail << "H1 vs -(2/sin g)(H - E0) " << sci(*t1.closed_form_negated) << "; ";
}

void c08(Outcome& o) {
  const int L = 6;
  const double g = kPi / 3.0;
  const auto f = WeightFamily::trigonometric(g);
  const cplx u0(0.23, -0.11);
  const Matrix t = transfer(f, u0, L);
  double eig = 0.0, lam = 0.0;
  int n = 0;
  for (const auto& s : onshell(L, 2, RapidityFamily::xxz(g))) {
    const auto u = spectral(s, f);
    const Vector psi = aba_state(f, u, L);
    const cplx l = lambda_aba(f, u0, u, L);
    eig = std::max(eig, (t * psi - l * psi).norm() / (std::abs(l) * psi.norm()));
    std::vector<cplx> z;
    for (cplx x : u) z.push_back(weights_at(f, x).b / weights_at(f, x).a);
    lam = std::max(lam, std::abs(l - lambda_cba(weights_at(f, u0), z, L)) / std::abs(l));
    ++n;
  }
  o.require(n > 0, std::to_string(n) + " on-shell states");
  o.require(eig < 1e-8, "eigen residual " + sci(eig));
  o.require(lam < 1e-11, "Lambda vs six-vertex formula " + sci(lam));
}

void c09(Outcome& o) {
  const int L = 6;
  const double g = kPi / 3.0;
  const auto f = WeightFamily::trigonometric(g);
  double worst = 0.0;
  int n = 0;
  for (int M = 0; M <= 3; ++M) {
    for (const auto& s : onshell(L, M, RapidityFamily::xxz(g))) {
      const Vector psi = to_sector(aba_state(f, spectral(s, f), L), sector_basis(L, M));
      const auto cba = bethe_state(L, s.p, std::cos(g));
      const double ov = std::abs(cba.amplitudes.dot(psi)) / (cba.amplitudes.norm() * psi.norm());
      worst = std::max(worst, std::abs(1.0 - ov));
      ++n;
    }
  }
  o.require(n > 0, std::to_string(n) + " on-shell states");
  o.require(worst < 1e-8, "max |1 - overlap| " + sci(worst));
}

void c10(Outcome& o) {
  auto rng = stream_rng(2024, 10);
  double z = 0.0, fig = 0.0;
  for (auto [L, K] : {std::pair{2, 2}, {3, 2}, {3, 3}}) {
    const VertexWeights w{rnd(rng), rnd(rng), rnd(rng)};
    const cplx zt = partition_trace(w, L, K), zb = partition_bruteforce(w, L, K);
    z = std::max(z, std::abs(zt - zb) / std::abs(zb));
  }
  // <-++| and |++->, minus = down: site 1 resp. site 3 carries the line
  const std::uint64_t mpp = 0b100, ppm = 0b001;
  for (int t = 0; t < 3; ++t) {
    const VertexWeights w{rnd(rng), rnd(rng), rnd(rng)};
    const Matrix tm = transfer_matrix(w, 3);
    fig = std::max(fig, std::abs(tm(mpp, ppm) - w.a * w.c * w.c));
    fig = std::max(fig, std::abs(tm(ppm, ppm) - (w.a * w.b * w.b + w.a * w.a * w.b)));
  }
  o.require(z < 1e-10, "trace vs brute force " + sci(z));
  o.require(fig < 1e-14, "three-site entries " + sci(fig));
}

void c11(Outcome& o) {
  const int L = 8, M = 2;
  const auto s = solve_complex(L, {cplx(0.95, 0.55), cplx(0.95, -0.55)}, 1.0);
  o.require(s.converged, "complex solve converged" + (s.note.empty() ? "" : " (" + s.note + ")"));
  o.require(s.residual_product < 1e-9, "product residual " + sci(s.residual_product));
  const double imP = std::abs(s.total_momentum().imag());
  o.require(imP < 1e-8, "Im P " + sci(imP));
  const ChainParams p{L, 1.0, 1.0, 0.0};
  const double gap = nearest(exact_diagonalize(p, M).energies, vacuum_energy(p) + s.energy());
  o.require(gap < 1e-7, "energy in ED " + sci(gap));
  o.detail << "p = " << s.p[0].real() << (s.p[0].imag() < 0 ? "" : "+") << s.p[0].imag() << "i, eps = " << s.energy()
           << "; ";
  double on = 0.0, off = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 3; ++m) {
    const auto x = xxx_extras(6, m, 11);
    on = std::max(on, x.s_plus_on_shell);
    off = std::min(off, x.s_plus_off_shell);
  }
  o.require(on < 1e-8, "S+ on shell " + sci(on));
  o.require(off > 1e-3, "S+ off-shell control " + sci(off));
}

void c12(Outcome& o) {
  const int L = 5;
  const auto f = WeightFamily::trigonometric(kPi / 3.0);
  auto rng = stream_rng(2024, 12);
  double tw = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Matrix a = transfer(f, rnd(rng), L, 0.7), b = transfer(f, rnd(rng), L, 0.7);
    tw = std::max(tw, commutator_norm(a, b) / (a.norm() * b.norm()));
  }
  std::vector<cplx> mu;
  for (int l = 0; l < L; ++l) mu.push_back(rnd(rng, 0.5));
  const cplx u(0.2, 0.3);
  cplx pa = 1.0;
  for (cplx x : mu) pa *= weights_at(f, u - x).a;
  const auto m = abcd(monodromy(f, u, L, 0.0, mu));
  const Vector omega = vacuum(L);
  const double inh = (m.A * omega - pa * omega).norm() / std::abs(pa);
  double one = 0.0;
  for (int k = 1; k < L; ++k) {
    const cplx v = u_of_lambda(f, rapidity_of((2.0 * kPi * k - 0.7) / L, RapidityFamily::xxz(kPi / 3.0)));
    one = std::max(one, measure_twisted_state(f, u, {v}, L, 0.7).residual);
  }
  o.notes.push_back("measured: twisted one-magnon states at p = (2 pi k - theta)/L, eigen residual " + sci(one));
  o.require(tw < 1e-11, "twisted commutator " + sci(tw));
  o.require(inh < 1e-12, "inhomogeneous A vacuum " + sci(inh));
}

const std::vector<Criterion> kCriteria{
    {"vacuum energy", 1, c01},
    {"magnon dispersion", 5, c02},
    {"completeness L=6", 120, c03},
    {"Yang-Yang oracle", 10, c04},
    {"YBE/FCR/RTT", 30, c05},
    {"commuting family", 60, c06},
    {"trace identities", 30, c07},
    {"ABA eigenvector", 60, c08},
    {"CBA-ABA equivalence", 120, c09},
    {"partition function", 60, c10},
    {"XXX bound state", 60, c11},
    {"twist/inhomogeneity", 30, c12},
};

bool run(int k) {
  const auto& c = kCriteria[k - 1];
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what() << "; ";
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(dt < c.limit_s, "runtime " + sci(dt) + " s");
  std::printf("C%02d %s %s: %s\n", k, o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [1-%zu]\n", kCriteria.size());
    return 2;
  }
  if (argc == 2) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "no criterion %s\n", argv[1]);
      return 2;
    }
    return run(k) ? 0 : 1;
  }
  int failed = 0;
  for (std::size_t k = 1; k <= kCriteria.size(); ++k) failed += !run(static_cast<int>(k));
  std::printf("%zu/%zu passed\n", kCriteria.size() - failed, kCriteria.size());
  return failed ? 1 : 0;
}
