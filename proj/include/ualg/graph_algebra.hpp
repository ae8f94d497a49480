// graph_algebra.hpp
//
// A(alpha): the subalgebra of A x A whose universe is the congruence alpha,
// viewed as a set of ordered pairs.  Carries the projection kernels eta1 and
// eta2, congruence lifts along either coordinate, and the congruence
// Delta_{alpha,beta} generated by the beta-diagonal.

#pragma once

#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/partition.hpp"

namespace ualg {

struct GraphAlgebra {
  FiniteAlgebra base;
  Partition alpha;
  FiniteAlgebra derived;                  // universe = pairs of alpha, lexicographic
  std::vector<std::pair<int, int>> pairs; // derived element -> base pair
  std::vector<std::vector<int>> pair_index;  // base pair -> derived element or -1
  Partition eta1, eta2;                   // coordinate projection kernels

  int index_of(int x, int y) const { return pair_index[x][y]; }
};

/// Build A(alpha) with deterministic (lexicographic) pair order.
GraphAlgebra graph_algebra(const FiniteAlgebra& alg, const Partition& alpha);

/// Lift a congruence of the base along coordinate 1 or 2:
/// coordinate 1 relates (x,y), (z,w) iff (x,z) in beta; coordinate 2 uses (y,w).
Partition lift_congruence(const GraphAlgebra& G, const Partition& beta, int coordinate);

/// Delta_{alpha,beta}: the congruence of A(alpha) generated by the
/// beta-diagonal {((x,x),(z,z)) : (x,z) in beta}.
Partition delta_congruence(const GraphAlgebra& G, const Partition& beta);

}  // namespace ualg
