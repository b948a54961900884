#include "bethelab/sixvertex.hpp"

#include <algorithm>
#include <thread>

#include "bethelab/qism.hpp"
#include "bethelab/tensor.hpp"

namespace bethe {

cplx delta_of(const VertexWeights& w) {
  if (w.a * w.b == 0.0) throw DomainError("delta_of: a b = 0");
  return (w.a * w.a + w.b * w.b - w.c * w.c) / (2.0 * w.a * w.b);
}

VertexWeights weights_at(const WeightFamily& f, cplx u) {
  if (f.kind == WeightKind::rational) return {u + kI, u, kI};
  if (std::sin(f.gamma) == 0.0) throw DomainError("weights_at: sin gamma = 0");
  const cplx ig = kI * f.gamma;
  return {f.rho * std::sinh(u + ig), f.rho * std::sinh(u), f.rho * std::sinh(ig)};
}

VertexWeights weights_prime(const WeightFamily& f, cplx u) {
  if (f.kind == WeightKind::rational) return {1.0, 1.0, 0.0};
  return {f.rho * std::cosh(u + kI * f.gamma), f.rho * std::cosh(u), 0.0};
}

cplx vertex_weight(const VertexWeights& w, int aux_in, int phys_in, int aux_out, int phys_out) {
  if (aux_in + phys_in != aux_out + phys_out) return 0.0;
  if (aux_in == phys_in) return w.a;
  return aux_in == aux_out ? w.b : w.c;
}

Matrix transfer_matrix(const VertexWeights& w, int L) {
  if (L < 1 || L > caps::monodromy_sites) throw SizeError("transfer_matrix: L out of range");
  return partial_trace_aux(lax_product(std::vector<Matrix>(L, lax(w))));
}

Matrix transfer_matrix_rowsum(const VertexWeights& w, int L) {
  if (L < 1 || L > 8) throw SizeError("transfer_matrix_rowsum: L out of range");
  const std::uint64_t dim = std::uint64_t{1} << L;
  Matrix t = Matrix::Zero(dim, dim);
  for (std::uint64_t out = 0; out < dim; ++out) {
    for (std::uint64_t in = 0; in < dim; ++in) {
      cplx sum = 0.0;
      for (std::uint64_t h = 0; h < dim; ++h) {
        // h_l is the horizontal edge entering site l from the left; h_{L+1} = h_1
        cplx prod = 1.0;
        for (int l = 1; l <= L && prod != 0.0; ++l) {
          const int hin = site_bit(h, l, L), hout = site_bit(h, l == L ? 1 : l + 1, L);
          prod *= vertex_weight(w, hin, site_bit(in, l, L), hout, site_bit(out, l, L));
        }
        sum += prod;
      }
      t(out, in) = sum;
    }
  }
  return t;
}

cplx partition_trace(const VertexWeights& w, int L, int K) {
  if (K < 1) throw DomainError("partition_trace: K < 1");
  const Matrix t = transfer_matrix(w, L);
  Matrix p = t;
  for (int k = 1; k < K; ++k) p = p * t;
  return p.trace();
}

namespace {

// Torus of K rows and L columns. Vertex (k, l): aux edges h(k, l) -> h(k, l+1), physical v(k, l) -> v(k+1, l).
class TorusEnumerator {
 public:
  TorusEnumerator(const VertexWeights& w, int L, int K) : w_(w), L_(L), K_(K), edge_(2 * L * K, -1) {}

  int h(int k, int l) const { return (k % K_) * L_ + (l % L_); }
  int v(int k, int l) const { return L_ * K_ + (k % K_) * L_ + (l % L_); }

  std::vector<int> vertex_edges(int vtx) const {
    const int k = vtx / L_, l = vtx % L_;
    return {h(k, l), v(k, l), h(k, l + 1), v(k + 1, l)};
  }

  cplx run(int vtx) {
    if (vtx == L_ * K_) return 1.0;
    const auto e = vertex_edges(vtx);
    std::vector<int> free;
    for (int x : e)
      if (edge_[x] < 0 && std::find(free.begin(), free.end(), x) == free.end()) free.push_back(x);
    cplx sum = 0.0;
    for (int bits = 0; bits < (1 << free.size()); ++bits) {
      for (std::size_t j = 0; j < free.size(); ++j) edge_[free[j]] = (bits >> j) & 1;
      const cplx wt = vertex_weight(w_, edge_[e[0]], edge_[e[1]], edge_[e[2]], edge_[e[3]]);
      if (wt != 0.0) sum += wt * run(vtx + 1);
    }
    for (int x : free) edge_[x] = -1;
    return sum;
  }

  // The first vertex's free edges split the configuration space into independent chunks.
  std::vector<int> first_free() const {
    std::vector<int> free;
    for (int x : vertex_edges(0))
      if (std::find(free.begin(), free.end(), x) == free.end()) free.push_back(x);
    return free;
  }

  cplx chunk(int bits) {
    const auto free = first_free();
    for (std::size_t j = 0; j < free.size(); ++j) edge_[free[j]] = (bits >> j) & 1;
    const auto e = vertex_edges(0);
    const cplx wt = vertex_weight(w_, edge_[e[0]], edge_[e[1]], edge_[e[2]], edge_[e[3]]);
    const cplx r = wt != 0.0 ? wt * run(1) : 0.0;
    for (int x : free) edge_[x] = -1;
    return r;
  }

 private:
  VertexWeights w_;
  int L_, K_;
  std::vector<int> edge_;
};

cplx pairwise_sum(const std::vector<cplx>& x, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return x[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(x, lo, mid) + pairwise_sum(x, mid, hi);
}

}  // namespace

cplx partition_bruteforce(const VertexWeights& w, int L, int K, int threads) {
  if (L < 1 || K < 1) throw DomainError("partition_bruteforce: L, K must be positive");
  if (2 * L * K > caps::bruteforce_edges) throw SizeError("partition_bruteforce: more than 20 edges");
  const int nchunks = 1 << TorusEnumerator(w, L, K).first_free().size();
  std::vector<cplx> parts(nchunks);
  const int nt = std::max(1, std::min(threads, nchunks));
  auto work = [&](int t) {
    TorusEnumerator en(w, L, K);
    for (int c = t; c < nchunks; c += nt) parts[c] = en.chunk(c);
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return pairwise_sum(parts, 0, parts.size());
}

cplx lambda_cba(const VertexWeights& w, const std::vector<cplx>& z, int L) {
  const cplx& a = w.a;
  const cplx& b = w.b;
  const cplx& c = w.c;
  cplx first = std::pow(a, L), second = std::pow(b, L);
  for (cplx zm : z) {
    if (zm == 0.0) throw PoleError("lambda_cba: z = 0", {zm});
    const cplx den = a - b / zm;
    if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(a))) throw PoleError("lambda_cba: a - b/z = 0", {zm});
    first *= (b * den + c * c / zm) / (a * den);
    second *= (a * den - c * c) / (b * den);
  }
  return first + second;
}

std::vector<cplx> sixvertex_bae_residual(const VertexWeights& w, const std::vector<cplx>& z, int L) {
  const cplx D = delta_of(w);
  const std::size_t M = z.size();
  std::vector<cplx> out(M);
  for (std::size_t m = 0; m < M; ++m) {
    cplx prod = (M % 2 == 1) ? 1.0 : -1.0;
    for (std::size_t n = 0; n < M; ++n) {
      if (n == m) continue;
      const cplx num = 1.0 - 2.0 * D * z[m] + z[m] * z[n];
      const cplx den = 1.0 - 2.0 * D * z[n] + z[m] * z[n];
      if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(num))) throw PoleError("sixvertex_bae_residual: pole", {z[m], z[n]});
      prod *= num / den;
    }
    out[m] = std::pow(z[m], static_cast<int>(L)) - prod;
  }
  return out;
}

}  // namespace bethe
