// congruence.hpp
//
// Principal and generated congruences, the full congruence lattice, lattice
// intervals, and pentagon (N5) sublattice detection.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/partition.hpp"

namespace ualg {

/// Default cap on congruence lattice size.
inline constexpr std::size_t kLatticeBudget = 100000;

/// Least congruence relating a and b (principal congruence), computed by the
/// standard worklist: every merged pair is pushed through every operation in
/// every argument position against all choices of remaining arguments.
Partition cg(const FiniteAlgebra& alg, int a, int b);

/// Least congruence relating every pair in `pairs`.
Partition cg_set(const FiniteAlgebra& alg, const std::vector<std::pair<int, int>>& pairs);

/// Least congruence above `seed` relating every pair in `pairs`.
Partition cg_set_above(const FiniteAlgebra& alg, const Partition& seed,
                       const std::vector<std::pair<int, int>>& pairs);

/// The full congruence lattice: principal congruences, closed under join,
/// plus the equality partition.  Elements are sorted by block count
/// descending (equality first, total last), then lexicographically by
/// representative array, so indices are canonical.
struct CongruenceLattice {
  FiniteAlgebra algebra;
  std::vector<Partition> congruences;      // canonical order as above
  std::vector<std::vector<char>> leq_tab;  // leq_tab[i][j] = (c_i <= c_j)
  std::vector<std::vector<int>> join_tab;  // indices
  std::vector<std::vector<int>> meet_tab;  // indices

  int size() const { return static_cast<int>(congruences.size()); }
  /// Index of a partition in the lattice, or -1.
  int index_of(const Partition& p) const;
  bool leq_idx(int i, int j) const { return leq_tab[i][j]; }
  int join_idx(int i, int j) const { return join_tab[i][j]; }
  int meet_idx(int i, int j) const { return meet_tab[i][j]; }
  int bottom() const;  // index of the equality partition
  int top() const;     // index of the total partition

  /// True iff for all x,y,z: x <= z implies x v (y ^ z) = (x v y) ^ z.
  bool is_modular() const;
};

CongruenceLattice con_lattice(const FiniteAlgebra& alg, std::size_t budget = kLatticeBudget);

/// All members x with lo <= x <= hi, in lattice index order.
/// Throws argument_error when lo is not below hi.
std::vector<int> interval(const CongruenceLattice& L, int lo, int hi);

/// A pentagon sublattice: delta < theta incomparable to beta, with
/// beta ^ theta = beta ^ delta = bottom and beta v delta = beta v theta = top.
struct Pentagon {
  int bottom = -1, beta = -1, delta = -1, theta = -1, top = -1;  // lattice indices
  bool operator==(const Pentagon&) const = default;
};

/// Optional constraints pinning pentagon labels to given congruences.
struct PentagonConstraints {
  std::optional<Partition> bottom, beta, delta, theta, top;
};

/// All labeled pentagons, deduplicated by 5-element subset and enumerated in
/// deterministic order (lexicographic by the label index tuple).  A single
/// subset may admit more than one valid labeling; all are emitted.
std::vector<Pentagon> find_pentagons(const CongruenceLattice& L,
                                     const PentagonConstraints& constraints = {});

}  // namespace ualg
