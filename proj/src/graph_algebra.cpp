// graph_algebra.cpp
//
// Construction of A(alpha), its projection kernels, lifts, and Delta.

#include "ualg/graph_algebra.hpp"

#include "ualg/congruence.hpp"
#include "ualg/errors.hpp"

namespace ualg {

GraphAlgebra graph_algebra(const FiniteAlgebra& alg, const Partition& alpha) {
  validate(alg);
  std::string why;
  if (alpha.n != alg.size || !is_congruence(alg, alpha, &why))
    throw argument_error("graph_algebra: alpha is not a congruence" +
                         (why.empty() ? std::string() : " (" + why + ")"));

  GraphAlgebra G;
  G.base = alg;
  G.alpha = alpha;
  G.pairs = alpha.ordered_pairs();  // lexicographic, includes the diagonal
  const int m = static_cast<int>(G.pairs.size());
  G.pair_index.assign(alg.size, std::vector<int>(alg.size, -1));
  for (int i = 0; i < m; ++i) G.pair_index[G.pairs[i].first][G.pairs[i].second] = i;

  G.derived.name = alg.name + "(" + to_text(alpha) + ")";
  G.derived.size = m;
  for (std::size_t oi = 0; oi < alg.ops.size(); ++oi) {
    const auto& src = alg.ops[oi];
    OperationTable op;
    op.name = src.name;
    op.arity = src.arity;
    const int k = op.arity;
    std::size_t len = 1;
    for (int i = 0; i < k; ++i) len *= static_cast<std::size_t>(m);
    op.table.resize(len);
    std::vector<int> args(k, 0), first(k), second(k);
    std::size_t idx = 0;
    while (true) {
      for (int i = 0; i < k; ++i) {
        first[i] = G.pairs[args[i]].first;
        second[i] = G.pairs[args[i]].second;
      }
      int fx = eval_op(alg, static_cast<int>(oi), first);
      int fy = eval_op(alg, static_cast<int>(oi), second);
      int res = G.pair_index[fx][fy];
      if (res < 0)
        throw verification_error("graph_algebra: alpha not closed under operation " +
                                 src.name);
      op.table[idx++] = res;
      int i = k - 1;
      for (; i >= 0; --i) {
        if (++args[i] < m) break;
        args[i] = 0;
      }
      if (i < 0) break;
    }
    G.derived.ops.push_back(std::move(op));
  }

  // Projection kernels: eta1 groups pairs by first coordinate, eta2 by second.
  G.eta1 = lift_congruence(G, Partition::equality(alg.size), 1);
  G.eta2 = lift_congruence(G, Partition::equality(alg.size), 2);
  return G;
}

Partition lift_congruence(const GraphAlgebra& G, const Partition& beta, int coordinate) {
  if (coordinate != 1 && coordinate != 2)
    throw argument_error("lift_congruence: coordinate must be 1 or 2");
  if (beta.n != G.base.size)
    throw argument_error("lift_congruence: partition size does not match base");
  const int m = static_cast<int>(G.pairs.size());
  // Group derived elements by the beta-class of the chosen coordinate; the
  // least derived index in each group is the representative.
  std::vector<int> first_seen(G.base.size, -1);
  Partition p;
  p.n = m;
  p.rep.resize(m);
  for (int i = 0; i < m; ++i) {
    int c = coordinate == 1 ? G.pairs[i].first : G.pairs[i].second;
    int cls = beta.rep[c];
    if (first_seen[cls] < 0) first_seen[cls] = i;
    p.rep[i] = first_seen[cls];
  }
  return p;
}

Partition delta_congruence(const GraphAlgebra& G, const Partition& beta) {
  if (beta.n != G.base.size)
    throw argument_error("delta_congruence: partition size does not match base");
  std::vector<std::pair<int, int>> gens;
  for (auto [x, z] : beta.strict_pairs()) {
    int i = G.index_of(x, x);
    int j = G.index_of(z, z);
    if (i < 0 || j < 0)
      throw argument_error("delta_congruence: diagonal pair missing from A(alpha)");
    gens.emplace_back(i, j);
  }
  return cg_set(G.derived, gens);
}

}  // namespace ualg
