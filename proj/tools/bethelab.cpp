#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bethelab/bae.hpp"
#include "bethelab/cba.hpp"
#include "bethelab/qism.hpp"
#include "bethelab/sixvertex.hpp"
#include "bethelab/spinchain.hpp"
#include "bethelab/tensor.hpp"

using namespace bethe;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kCheckFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command, suite;
  int L = 6, M = -1, K = 2, trials = 20, threads = 0;
  std::optional<double> gamma, delta, gamma2, tol;
  bool xxx = false;
  double J = 1.0, h = 0.0, theta = 0.0;
  std::vector<std::string> mu, seeds, weights;
  std::uint64_t seed = 0;
  std::string format = "json", output;
};

cplx parse_cplx(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw UsageError("not a number: " + s);
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw UsageError("expected re,im: " + s);
  }
  return {re, im};
}

std::vector<cplx> parse_list(const std::vector<std::string>& v) {
  std::vector<cplx> out;
  for (const auto& s : v) out.push_back(parse_cplx(s));
  return out;
}

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

double gamma_of(const Config& c) {
  if (c.gamma) return *c.gamma;
  if (c.delta) {
    if (*c.delta <= -1.0 || *c.delta >= 1.0) throw DomainError("delta must lie in (-1, 1) to define gamma = arccos delta");
    return std::acos(*c.delta);
  }
  return kPi / 3.0;
}

double delta_of_cfg(const Config& c) {
  if (c.xxx) return 1.0;
  if (c.delta) return *c.delta;
  return std::cos(gamma_of(c));
}

WeightFamily family_of(const Config& c) {
  return c.xxx ? WeightFamily::rational() : WeightFamily::trigonometric(gamma_of(c));
}

int threads_of(const Config& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("BETHELAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json params_of(const Config& c) {
  json p{{"L", c.L}, {"J", c.J}, {"h", c.h}, {"theta", c.theta}, {"trials", c.trials}, {"K", c.K}, {"xxx", c.xxx}};
  if (c.M >= 0) p["M"] = c.M;
  if (c.gamma) p["gamma"] = *c.gamma;
  if (c.delta) p["delta"] = *c.delta;
  if (c.gamma2) p["gamma2"] = *c.gamma2;
  if (c.tol) p["tol"] = *c.tol;
  if (!c.suite.empty()) p["suite"] = c.suite;
  if (!c.mu.empty()) p["mu"] = to_json(parse_list(c.mu));
  if (!c.seeds.empty()) p["seeds"] = to_json(parse_list(c.seeds));
  if (!c.weights.empty()) p["weights"] = to_json(parse_list(c.weights));
  return p;
}

struct Report {
  json results = json::array();
  json residuals = json::object();
  bool ok = true;
};

// Flatten one result row into dotted columns; arrays become indexed columns.
void flatten(const json& j, const std::string& prefix, std::map<std::string, std::string>& row) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), row);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), row);
  } else if (j.is_string()) {
    row[prefix] = j.get<std::string>();
  } else {
    row[prefix] = j.dump();
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void emit(const Config& c, const Report& r) {
  std::ostringstream out;
  if (c.format == "csv") {
    std::vector<std::map<std::string, std::string>> rows;
    std::vector<std::string> header;
    for (const auto& res : r.results) {
      rows.emplace_back();
      flatten(res, "", rows.back());
      for (auto& [k, v] : rows.back())
        if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_escape(header[i]);
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        const auto it = row.find(header[i]);
        out << (i ? "," : "") << (it == row.end() ? "" : csv_escape(it->second));
      }
      out << "\n";
    }
  } else {
    json doc{{"meta", {{"command", c.command}, {"params", params_of(c)}, {"seed", c.seed}, {"version", BETHELAB_VERSION}}},
             {"results", r.results},
             {"residuals", r.residuals}};
    out << doc.dump(2) << "\n";
  }
  if (c.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(c.output);
    if (!f) throw UsageError("cannot write " + c.output);
    f << out.str();
  }
}

// Momenta of the eigenvectors of one sector block: U is diagonalized inside each degenerate eigenspace.
std::vector<double> sector_momenta(const Eigensystem& es, const SectorBasis& basis) {
  const Matrix U = shift_operator(basis.L);
  std::vector<double> k(es.values.size());
  Eigen::Index i = 0;
  while (i < es.values.size()) {
    Eigen::Index j = i + 1;
    while (j < es.values.size() && es.values(j) - es.values(i) < 1e-9) ++j;
    Matrix V(U.rows(), j - i);
    for (Eigen::Index n = i; n < j; ++n) V.col(n - i) = to_full(es.vectors.col(n), basis);
    const Matrix Ur = V.adjoint() * U * V;
    Eigen::ComplexEigenSolver<Matrix> ce(Ur);
    std::vector<double> ph;
    for (Eigen::Index n = 0; n < ce.eigenvalues().size(); ++n) ph.push_back(std::arg(ce.eigenvalues()(n)));
    std::sort(ph.begin(), ph.end());
    for (Eigen::Index n = i; n < j; ++n) k[n] = ph[n - i] <= -kPi + 1e-12 ? kPi : ph[n - i];
    i = j;
  }
  return k;
}

Report cmd_spectrum(const Config& c) {
  if (c.L > caps::full_sites) throw SizeError("spectrum: L > " + std::to_string(caps::full_sites));
  const ChainParams p{c.L, c.J, delta_of_cfg(c), c.h};
  validate(p);
  Report r;
  const int lo = c.M >= 0 ? c.M : 0, hi = c.M >= 0 ? c.M : c.L;
  for (int M = lo; M <= hi; ++M) {
    const auto basis = sector_basis(c.L, M);
    const auto sp = exact_diagonalize(p, M);
    const auto k = sector_momenta({sp.energies, sp.vectors}, basis);
    for (Eigen::Index n = 0; n < sp.energies.size(); ++n) r.results.push_back({{"M", M}, {"energy", sp.energies(n)}, {"momentum", k[n]}});
  }
  r.residuals["vacuum_energy"] = vacuum_energy(p);
  return r;
}

Report cmd_bae(const Config& c) {
  Report r;
  if (!c.seeds.empty()) {
    const auto s = solve_complex(c.L, parse_list(c.seeds), delta_of_cfg(c));
    const ChainParams p{c.L, c.J, delta_of_cfg(c), 0.0};
    r.results.push_back({{"lambda", to_json(s.lambda)},
                         {"p", to_json(s.p)},
                         {"energy", vacuum_energy(p) + c.J * s.energy()},
                         {"total_momentum", to_json(s.total_momentum())},
                         {"residual_product", s.residual_product},
                         {"iterations", s.iterations},
                         {"converged", s.converged},
                         {"note", s.note}});
    r.residuals["product"] = s.residual_product;
    r.ok = s.converged;
    return r;
  }
  if (c.M < 0) throw UsageError("bae: --M is required without --seeds");
  const auto f = c.xxx ? RapidityFamily::xxx() : RapidityFamily::xxz(gamma_of(c));
  const ChainParams p{c.L, c.J, f.delta(), 0.0};
  double worst_log = 0.0, worst_prod = 0.0;
  int failed = 0;
  json failures = json::array();
  for (const auto& s : enumerate_real(c.L, c.M, f, threads_of(c))) {
    std::vector<cplx> eps;
    for (cplx l : s.lambda) eps.push_back(energy_of(l, f));
    r.results.push_back({{"I", s.I},
                         {"lambda", to_json(s.lambda)},
                         {"p", to_json(s.p)},
                         {"eps", to_json(eps)},
                         {"energy", vacuum_energy(p) + c.J * s.energy()},
                         {"residual_log", s.residual_log},
                         {"residual_product", s.residual_product},
                         {"converged", s.converged},
                         {"note", s.note}});
    if (s.converged) {
      worst_log = std::max(worst_log, s.residual_log);
      worst_prod = std::max(worst_prod, s.residual_product);
    } else {
      ++failed;
      failures.push_back({{"I", s.I}, {"note", s.note}});
    }
  }
  r.residuals = {{"log", worst_log}, {"product", worst_prod}, {"count", r.results.size() - failed},
                 {"expected", binomial(c.L, c.M)}, {"failures", failures}};
  r.ok = failed == 0;
  return r;
}

struct Worst {
  double value = 0.0;
  json where;
  void take(double v, json w) {
    if (v > value || where.is_null()) value = v, where = std::move(w);
  }
};

cplx draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

void record(Report& r, const std::string& name, const Worst& w, double tol, bool below = true) {
  const bool pass = below ? w.value < tol : w.value > tol;
  r.results.push_back({{"check", name}, {"max_residual", w.value}, {"tol", tol}, {"pass", pass}, {"worst", w.where}});
  r.residuals[name] = w.value;
  r.ok = r.ok && pass;
}

Report cmd_verify(const Config& c) {
  Report r;
  const auto f = family_of(c);
  auto rng = stream_rng(c.seed);
  const auto& s = c.suite;
  if (s == "ybe") {
    Worst w;
    for (int t = 0; t < c.trials; ++t) {
      const cplx u = draw(rng), v = draw(rng), x = draw(rng);
      w.take(ybe_residual(f, u, v, x), {{"u", to_json(u)}, {"v", to_json(v)}, {"w", to_json(x)}});
    }
    record(r, "ybe", w, c.tol.value_or(1e-12));
  } else if (s == "fcr") {
    Worst w, three;
    for (int t = 0; t < c.trials; ++t) {
      const cplx u = draw(rng), v = draw(rng);
      const json at{{"u", to_json(u)}, {"v", to_json(v)}};
      w.take(fcr_residual(f, u, v), at);
      const auto rep = fcr_three_equations(weights_at(f, u), weights_at(f, v));
      const auto ex = weights_at(f, u - v);
      const Eigen::Vector3cd a(rep.solution.a, rep.solution.b, rep.solution.c), b(ex.a, ex.b, ex.c);
      three.take(1.0 - std::abs(a.dot(b)) / (a.norm() * b.norm()), at);
    }
    record(r, "fcr", w, c.tol.value_or(1e-12));
    record(r, "fcr_three_equations", three, 1e-10);
  } else if (s == "rtt") {
    Worst w;
    for (int t = 0; t < c.trials; ++t) {
      const cplx u = draw(rng), v = draw(rng);
      w.take(rtt_residual(f, u, v, c.L, c.theta), {{"u", to_json(u)}, {"v", to_json(v)}});
    }
    record(r, "rtt", w, c.tol.value_or(1e-11));
  } else if (s == "yba") {
    Worst w;
    for (int t = 0; t < c.trials; ++t) {
      const cplx u = draw(rng), v = draw(rng);
      w.take(yba_residuals(f, u, v, c.L, c.theta).max(), {{"u", to_json(u)}, {"v", to_json(v)}});
    }
    record(r, "yba", w, c.tol.value_or(1e-10));
  } else if (s == "commute") {
    const auto f2 = c.gamma2 ? WeightFamily::trigonometric(*c.gamma2) : f;
    const auto mu = parse_list(c.mu);
    const Matrix H = xxz_full({c.L, 1.0, delta_of_cfg(c), 0.0});
    Worst tt, th;
    for (int t = 0; t < c.trials; ++t) {
      const cplx u = draw(rng), v = draw(rng);
      const Matrix a = transfer(f, u, c.L, c.theta, mu), b = transfer(f2, v, c.L, c.theta, mu);
      const json at{{"u", to_json(u)}, {"v", to_json(v)}};
      tt.take(commutator_norm(a, b) / (a.norm() * b.norm()), at);
      if (mu.empty() && c.theta == 0.0) th.take(commutator_norm(a, H) / (a.norm() * H.norm()), at);
    }
    const double tol = c.tol.value_or(mu.empty() && c.theta == 0.0 ? 1e-12 : 1e-11);
    record(r, "transfer_commutator", tt, tol);
    if (mu.empty() && c.theta == 0.0) record(r, "hamiltonian_commutator", th, tol);
  } else if (s == "trace") {
    const auto t0 = trace_identity(f, c.L, 0), t1 = trace_identity(f, c.L, 1);
    record(r, "t0_vs_shift", {t0.t0_vs_shift, nullptr}, 1e-14);
    record(r, "h0_momentum", {*t0.closed_form, nullptr}, 1e-12);
    record(r, "h1_hamiltonian", {*t1.closed_form, nullptr}, c.tol.value_or(1e-10));
    r.residuals["h1_hamiltonian_negated"] = *t1.closed_form_negated;
  } else if (s == "crosscheck") {
    if (c.xxx) throw UsageError("crosscheck runs on the trigonometric family");
    const int M = c.M >= 0 ? c.M : 2;
    const double g = gamma_of(c);
    const cplx u0 = draw(rng);
    const Matrix t = transfer(f, u0, c.L);
    Worst ov, lam, eig;
    int n = 0;
    for (const auto& sol : enumerate_real(c.L, M, RapidityFamily::xxz(g), threads_of(c))) {
      if (!sol.converged) continue;
      ++n;
      std::vector<cplx> u, z;
      for (cplx l : sol.lambda) {
        u.push_back(u_of_lambda(f, l));
        z.push_back(weights_at(f, u.back()).b / weights_at(f, u.back()).a);
      }
      const Vector psi = aba_state(f, u, c.L);
      const auto cba = bethe_state(c.L, sol.p, std::cos(g));
      const Vector sec = to_sector(psi, cba.basis);
      const json at{{"I", sol.I}};
      ov.take(std::abs(1.0 - std::abs(cba.amplitudes.dot(sec)) / (cba.amplitudes.norm() * sec.norm())), at);
      const cplx la = lambda_aba(f, u0, u, c.L);
      lam.take(std::abs(la - lambda_cba(weights_at(f, u0), z, c.L)) / std::abs(la), at);
      eig.take((t * psi - la * psi).norm() / (std::abs(la) * psi.norm()), at);
    }
    record(r, "cba_aba_overlap", ov, 1e-8);
    record(r, "lambda_formula", lam, 1e-11);
    record(r, "aba_eigen", eig, 1e-8);
    r.residuals["on_shell_states"] = n;
  } else {
    throw UsageError("unknown suite " + s);
  }
  return r;
}

Report cmd_partition(const Config& c) {
  auto rng = stream_rng(c.seed);
  VertexWeights w{draw(rng), draw(rng), draw(rng)};
  if (!c.weights.empty()) {
    const auto v = parse_list(c.weights);
    if (v.size() != 3) throw UsageError("--weights takes a b c");
    w = {v[0], v[1], v[2]};
  }
  Report r;
  const cplx zt = partition_trace(w, c.L, c.K);
  json row{{"L", c.L}, {"K", c.K}, {"a", to_json(w.a)}, {"b", to_json(w.b)}, {"c", to_json(w.c)}, {"trace", to_json(zt)}};
  const cplx s = draw(rng);
  const cplx zs = partition_trace({s * w.a, s * w.b, s * w.c}, c.L, c.K);
  const double rescale = std::abs(zs - std::pow(s, c.L * c.K) * zt) / std::abs(zs);
  r.residuals["rescale"] = rescale;
  r.ok = rescale < 1e-10;
  if (2 * c.L * c.K <= caps::bruteforce_edges) {
    const cplx zb = partition_bruteforce(w, c.L, c.K, threads_of(c));
    const double rel = std::abs(zt - zb) / std::abs(zb);
    row["bruteforce"] = to_json(zb);
    row["relative_difference"] = rel;
    r.residuals["bruteforce"] = rel;
    r.ok = r.ok && rel < c.tol.value_or(1e-10);
  } else {
    std::cerr << "brute force skipped: 2 L K = " << 2 * c.L * c.K << " edges exceeds " << caps::bruteforce_edges << "\n";
  }
  r.results.push_back(row);
  return r;
}

void model_options(CLI::App* sub, Config& c) {
  auto* g = sub->add_option("--gamma", c.gamma, "anisotropy angle, Delta = cos gamma");
  auto* d = sub->add_option("--delta", c.delta, "anisotropy Delta");
  auto* x = sub->add_flag("--xxx", c.xxx, "isotropic point (rational family)");
  g->excludes(d)->excludes(x);
  d->excludes(x);
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Bethe ansatz laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", c.threads, "worker threads (default BETHELAB_THREADS, then hardware)");
  app.add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", c.output);
  app.add_option("--seed", c.seed);

  auto* sp = app.add_subcommand("spectrum", "exact diagonalization per sector");
  sp->add_option("--L", c.L)->check(CLI::Range(2, caps::full_sites));
  sp->add_option("--M", c.M);
  sp->add_option("--J", c.J);
  sp->add_option("--field", c.h, "longitudinal field h");
  model_options(sp, c);

  auto* bae = app.add_subcommand("bae", "solve the Bethe equations");
  bae->add_option("--L", c.L)->check(CLI::PositiveNumber);
  bae->add_option("--M", c.M);
  bae->add_option("--J", c.J);
  bae->add_option("--seeds", c.seeds, "complex rapidity seeds re,im; switches to the complex solver");
  model_options(bae, c);

  auto* ver = app.add_subcommand("verify", "integrability checks");
  ver->add_option("suite", c.suite)->required()->check(CLI::IsMember({"ybe", "fcr", "rtt", "yba", "commute", "trace", "crosscheck"}));
  ver->add_option("--L", c.L)->check(CLI::PositiveNumber);
  ver->add_option("--M", c.M);
  ver->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
  ver->add_option("--theta", c.theta);
  ver->add_option("--mu", c.mu, "inhomogeneities re,im");
  ver->add_option("--gamma2", c.gamma2, "second transfer matrix anisotropy (commute)");
  ver->add_option("--tol", c.tol);
  model_options(ver, c);

  auto* part = app.add_subcommand("partition", "six-vertex torus partition function");
  part->add_option("--L", c.L)->check(CLI::PositiveNumber);
  part->add_option("--K", c.K)->check(CLI::PositiveNumber);
  part->add_option("--weights", c.weights, "a b c as re,im")->expected(3);
  part->add_option("--tol", c.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    Report r;
    if (*sp) {
      c.command = "spectrum";
      r = cmd_spectrum(c);
    } else if (*bae) {
      c.command = "bae";
      r = cmd_bae(c);
    } else if (*ver) {
      c.command = "verify";
      r = cmd_verify(c);
    } else {
      c.command = "partition";
      r = cmd_partition(c);
    }
    emit(c, r);
    if (!r.ok) std::cerr << c.command << ": check failed\n";
    return r.ok ? kPass : kCheckFailed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
