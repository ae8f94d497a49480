// congruence.cpp
//
// Worklist congruence generation, the congruence lattice, and N5 detection.

#include "ualg/congruence.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ualg/errors.hpp"
#include "ualg/union_find.hpp"

namespace ualg {

// ===== congruence generation =====

Partition cg_set_above(const FiniteAlgebra& alg, const Partition& seed,
                       const std::vector<std::pair<int, int>>& pairs) {
  const int n = alg.size;
  if (seed.n != n) throw argument_error("seed partition size does not match algebra");
  UnionFind uf(n);
  std::deque<std::pair<int, int>> work;
  auto merge = [&](int x, int y) {
    if (uf.unite(x, y)) work.emplace_back(x, y);
  };
  for (int i = 0; i < n; ++i) merge(i, seed.rep[i]);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw argument_error("congruence generator pair out of range");
    merge(a, b);
  }
  // Worklist: each newly merged pair is pushed through every operation, in
  // every argument position, against every choice of the remaining arguments.
  std::vector<int> args;
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (std::size_t oi = 0; oi < alg.ops.size(); ++oi) {
      const auto& op = alg.ops[oi];
      const int k = op.arity;
      if (k == 0) continue;
      args.assign(k, 0);
      for (int pos = 0; pos < k; ++pos) {
        // enumerate the remaining k-1 arguments
        std::fill(args.begin(), args.end(), 0);
        while (true) {
          args[pos] = x;
          int fx = eval_op(alg, static_cast<int>(oi), args);
          args[pos] = y;
          int fy = eval_op(alg, static_cast<int>(oi), args);
          merge(fx, fy);
          int i = k - 1;
          for (; i >= 0; --i) {
            if (i == pos) continue;
            if (++args[i] < n) break;
            args[i] = 0;
          }
          if (i < 0) break;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) uf.find(i);
  return Partition::from_parent_map(uf.parent);
}

Partition cg_set(const FiniteAlgebra& alg, const std::vector<std::pair<int, int>>& pairs) {
  return cg_set_above(alg, Partition::equality(alg.size), pairs);
}

Partition cg(const FiniteAlgebra& alg, int a, int b) {
  return cg_set(alg, {{a, b}});
}

// ===== congruence lattice =====

int CongruenceLattice::index_of(const Partition& p) const {
  for (int i = 0; i < size(); ++i)
    if (congruences[i] == p) return i;
  return -1;
}

int CongruenceLattice::bottom() const {
  return index_of(Partition::equality(algebra.size));
}

int CongruenceLattice::top() const {
  return index_of(Partition::total(algebra.size));
}

bool CongruenceLattice::is_modular() const {
  const int m = size();
  for (int x = 0; x < m; ++x)
    for (int z = 0; z < m; ++z) {
      if (!leq_tab[x][z]) continue;
      for (int y = 0; y < m; ++y)
        if (join_tab[x][meet_tab[y][z]] != meet_tab[join_tab[x][y]][z]) return false;
    }
  return true;
}

CongruenceLattice con_lattice(const FiniteAlgebra& alg, std::size_t budget) {
  const int n = alg.size;
  CongruenceLattice L;
  L.algebra = alg;

  std::unordered_set<Partition, PartitionHash> seen;
  std::vector<Partition> list;
  auto add = [&](const Partition& p) -> bool {
    if (seen.insert(p).second) {
      list.push_back(p);
      if (list.size() > budget)
        throw budget_error("con_lattice budget exceeded", list.size());
      return true;
    }
    return false;
  };

  add(Partition::equality(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) add(cg(alg, a, b));

  // Close under pairwise join.  Every congruence is the join of the principal
  // congruences below it, so this reaches all of Con(A).
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(join(list[i], list[j]));

  // Canonical order: block count descending (equality first, total last),
  // then lexicographic representative array.
  std::sort(list.begin(), list.end(), [](const Partition& p, const Partition& q) {
    int cp = p.classes(), cq = q.classes();
    if (cp != cq) return cp > cq;
    return p.rep < q.rep;
  });
  L.congruences = std::move(list);

  const int m = L.size();
  L.leq_tab.assign(m, std::vector<char>(m, 0));
  L.join_tab.assign(m, std::vector<int>(m, -1));
  L.meet_tab.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      L.leq_tab[i][j] = leq(L.congruences[i], L.congruences[j]) ? 1 : 0;
      int jo = L.index_of(join(L.congruences[i], L.congruences[j]));
      int me = L.index_of(meet(L.congruences[i], L.congruences[j]));
      if (jo < 0 || me < 0)
        throw verification_error("con_lattice: computed lattice not closed under join/meet");
      L.join_tab[i][j] = jo;
      L.meet_tab[i][j] = me;
    }
  return L;
}

std::vector<int> interval(const CongruenceLattice& L, int lo, int hi) {
  if (lo < 0 || hi < 0 || lo >= L.size() || hi >= L.size())
    throw argument_error("interval: index out of range");
  if (!L.leq_idx(lo, hi)) throw argument_error("interval: lo is not below hi");
  std::vector<int> out;
  for (int k = 0; k < L.size(); ++k)
    if (L.leq_idx(lo, k) && L.leq_idx(k, hi)) out.push_back(k);
  return out;
}

// ===== pentagon detection =====

std::vector<Pentagon> find_pentagons(const CongruenceLattice& L,
                                     const PentagonConstraints& constraints) {
  const int m = L.size();
  auto pinned = [&](const std::optional<Partition>& c, int idx) {
    return !c || L.congruences[idx] == *c;
  };
  auto valid = [&](const Pentagon& P) {
    // delta < theta strictly; beta ^ theta = beta ^ delta = bottom;
    // beta v delta = beta v theta = top.  Distinctness of labels is implied
    // by drawing the five indices from a 5-element subset.
    if (!(L.leq_idx(P.delta, P.theta) && P.delta != P.theta)) return false;
    if (L.meet_idx(P.beta, P.theta) != P.bottom) return false;
    if (L.meet_idx(P.beta, P.delta) != P.bottom) return false;
    if (L.join_idx(P.beta, P.delta) != P.top) return false;
    if (L.join_idx(P.beta, P.theta) != P.top) return false;
    return pinned(constraints.bottom, P.bottom) && pinned(constraints.beta, P.beta) &&
           pinned(constraints.delta, P.delta) && pinned(constraints.theta, P.theta) &&
           pinned(constraints.top, P.top);
  };

  std::vector<Pentagon> out;
  // Enumerate 5-element subsets in lexicographic order, then all label
  // assignments of each subset in lexicographic order of the index tuple
  // (bottom, beta, delta, theta, top).
  std::vector<int> sub(5);
  for (sub[0] = 0; sub[0] < m; ++sub[0])
    for (sub[1] = sub[0] + 1; sub[1] < m; ++sub[1])
      for (sub[2] = sub[1] + 1; sub[2] < m; ++sub[2])
        for (sub[3] = sub[2] + 1; sub[3] < m; ++sub[3])
          for (sub[4] = sub[3] + 1; sub[4] < m; ++sub[4]) {
            std::vector<int> perm = sub;  // ascending = lexicographically least
            std::vector<Pentagon> found;
            do {
              Pentagon P{perm[0], perm[1], perm[2], perm[3], perm[4]};
              if (valid(P)) found.push_back(P);
            } while (std::next_permutation(perm.begin(), perm.end()));
            out.insert(out.end(), found.begin(), found.end());
          }
  return out;
}

}  // namespace ualg
