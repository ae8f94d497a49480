// centrality.cpp
//
// Centralizer relation, commutator fixpoint, annihilators, solvability.

#include "ualg/centrality.hpp"

#include <algorithm>
#include <deque>

#include "ualg/errors.hpp"
#include "ualg/graph_algebra.hpp"

namespace ualg {

namespace {

void require_congruence(const FiniteAlgebra& alg, const Partition& p, const char* label) {
  std::string why;
  if (p.n != alg.size || !is_congruence(alg, p, &why))
    throw argument_error(std::string(label) + " is not a congruence of the algebra" +
                         (why.empty() ? std::string() : " (" + why + ")"));
}

}  // namespace

// ===== matrix sets =====

MatrixSet matrix_set(const FiniteAlgebra& alg, const Partition& alpha,
                     const Partition& beta, std::size_t budget) {
  require_congruence(alg, alpha, "alpha");
  require_congruence(alg, beta, "beta");
  std::vector<std::vector<int>> gens;
  for (auto [a, b] : alpha.ordered_pairs()) gens.push_back({a, a, b, b});
  for (auto [u, v] : beta.ordered_pairs()) gens.push_back({u, v, u, v});
  MatrixSet M;
  M.alpha = alpha;
  M.beta = beta;
  M.quads = subpower_closure(alg, 4, gens, budget);
  return M;
}

// ===== centralizer =====

bool centralizes(const FiniteAlgebra& alg, const Partition& alpha, const Partition& beta,
                 const Partition& delta, CentralityWitness* witness, std::size_t budget) {
  require_congruence(alg, delta, "delta");
  MatrixSet M = matrix_set(alg, alpha, beta, budget);
  bool ok = true;
  std::array<int, 4> best{};
  for (std::size_t i = 0; i < M.size(); ++i) {
    auto q = M.quad(i);
    if (delta.related(q[0], q[1]) && !delta.related(q[2], q[3])) {
      if (ok || q < best) best = q;
      ok = false;
    }
  }
  if (!ok && witness) witness->quad = best;
  return ok;
}

bool centralizes_delta(const FiniteAlgebra& alg, const Partition& alpha,
                       const Partition& beta, const Partition& delta,
                       CentralityWitness* witness) {
  require_congruence(alg, alpha, "alpha");
  require_congruence(alg, delta, "delta");
  GraphAlgebra G = graph_algebra(alg, beta);  // validates beta
  Partition D = delta_congruence(G, alpha);   // Delta_{beta,alpha}
  // C(alpha,beta;delta) holds iff delta-membership of pairs is constant on
  // every Delta-class.  A violation is a Delta-related pair of pairs
  // ((p,q),(r,s)) with (p,q) in delta and (r,s) not in delta.
  bool ok = true;
  std::array<int, 4> best{};
  const int m = static_cast<int>(G.pairs.size());
  for (int i = 0; i < m; ++i) {
    auto [p, q] = G.pairs[i];
    if (!delta.related(p, q)) continue;
    for (int j = 0; j < m; ++j) {
      if (!D.related(i, j)) continue;
      auto [r, s] = G.pairs[j];
      if (delta.related(r, s)) continue;
      std::array<int, 4> quad{p, q, r, s};
      if (ok || quad < best) best = quad;
      ok = false;
    }
  }
  if (!ok && witness) witness->quad = best;
  return ok;
}

// ===== commutator =====

Partition relative_commutator(const FiniteAlgebra& alg, const Partition& alpha,
                              const Partition& beta, const Partition& eps,
                              std::size_t budget) {
  require_congruence(alg, eps, "eps");
  MatrixSet M = matrix_set(alg, alpha, beta, budget);
  Partition d = eps;
  while (true) {
    std::vector<std::pair<int, int>> forced;
    for (std::size_t i = 0; i < M.size(); ++i) {
      auto q = M.quad(i);
      if (d.related(q[0], q[1]) && !d.related(q[2], q[3]))
        forced.emplace_back(q[2], q[3]);
    }
    if (forced.empty()) return d;
    d = cg_set_above(alg, d, forced);
  }
}

Partition commutator(const FiniteAlgebra& alg, const Partition& alpha,
                     const Partition& beta, std::size_t budget) {
  return relative_commutator(alg, alpha, beta, Partition::equality(alg.size), budget);
}

// ===== annihilators =====

Partition left_annihilator(const FiniteAlgebra& alg, const Partition& beta,
                           const Partition& delta) {
  // Join of all principal congruences that centralize beta modulo delta.
  // Semidistributivity of C in its first variable makes the join itself
  // centralize, so this is the largest such congruence.
  Partition gamma = Partition::equality(alg.size);
  for (int a = 0; a < alg.size; ++a)
    for (int b = a + 1; b < alg.size; ++b) {
      Partition p = cg(alg, a, b);
      if (centralizes(alg, p, beta, delta)) gamma = join(gamma, p);
    }
  if (!centralizes(alg, gamma, beta, delta))
    throw verification_error("left_annihilator: join of centralizing principals "
                             "does not centralize");
  return gamma;
}

RightAnnihilator right_annihilator(const FiniteAlgebra& alg, const Partition& beta,
                                   const Partition& delta) {
  // Accumulate the join of the centralized principal congruences in a fixed
  // order, keeping the invariant C(beta, j; delta).  If some step breaks the
  // invariant, the current join and the offending principal witness that no
  // largest centralized congruence exists (both are below any would-be
  // largest element, so monotonicity would force their join to centralize).
  RightAnnihilator out;
  Partition j = Partition::equality(alg.size);  // C(beta, 0; delta) always holds
  for (int a = 0; a < alg.size; ++a)
    for (int b = a + 1; b < alg.size; ++b) {
      Partition p = cg(alg, a, b);
      if (!centralizes(alg, beta, p, delta)) continue;
      Partition jp = join(j, p);
      if (centralizes(alg, beta, jp, delta)) {
        j = jp;
      } else {
        out.exists = false;
        out.witness_y = j;
        out.witness_y2 = p;
        return out;
      }
    }
  out.exists = true;
  out.value = j;
  return out;
}

// ===== abelian / neutral / solvability =====

bool is_abelian_over(const FiniteAlgebra& alg, const Partition& theta,
                     const Partition& delta) {
  return centralizes(alg, theta, theta, delta);
}

bool is_neutral_interval(const CongruenceLattice& L, const Partition& delta,
                         const Partition& theta) {
  int lo = L.index_of(delta), hi = L.index_of(theta);
  if (lo < 0 || hi < 0)
    throw argument_error("is_neutral_interval: partition not in the lattice");
  std::vector<int> iv = interval(L, lo, hi);
  for (int xi : iv)
    for (int yi : iv) {
      if (xi == yi || !L.leq_idx(xi, yi)) continue;
      Partition rel = relative_commutator(L.algebra, L.congruences[yi],
                                          L.congruences[yi], L.congruences[xi]);
      if (rel != L.congruences[yi]) return false;  // abelian-over-x subinterval
    }
  return true;
}

SolvabilityResult solvably_related(const CongruenceLattice& L, const Partition& gamma,
                                   const Partition& delta) {
  int gi = L.index_of(gamma), di = L.index_of(delta);
  if (gi < 0 || di < 0)
    throw argument_error("solvably_related: partition not in the lattice");
  int lo = L.meet_idx(gi, di), hi = L.join_idx(gi, di);
  std::vector<int> iv = interval(L, lo, hi);

  // Edge x -> y iff x <= y and C(y,y;x); breadth-first search from lo gives a
  // shortest chain, and expanding neighbors in lattice order makes ties
  // deterministic.
  std::vector<int> parent(L.size(), -1);
  std::vector<char> seen(L.size(), 0);
  std::deque<int> bfs;
  seen[lo] = 1;
  bfs.push_back(lo);
  while (!bfs.empty()) {
    int x = bfs.front();
    bfs.pop_front();
    if (x == hi) break;
    for (int y : iv) {
      if (seen[y] || y == x || !L.leq_idx(x, y)) continue;
      if (!centralizes(L.algebra, L.congruences[y], L.congruences[y], L.congruences[x]))
        continue;
      seen[y] = 1;
      parent[y] = x;
      bfs.push_back(y);
    }
  }
  SolvabilityResult out;
  if (!seen[hi]) {
    out.related = false;
    return out;
  }
  out.related = true;
  for (int c = hi;; c = parent[c]) {
    out.chain.push_back(c);
    if (c == lo) break;
  }
  std::reverse(out.chain.begin(), out.chain.end());
  return out;
}

}  // namespace ualg
