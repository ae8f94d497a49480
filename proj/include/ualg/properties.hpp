// properties.hpp
//
// Instance-level evaluation of the ten commutator properties over the full
// congruence lattice of one algebra, plus the commutator refinement
// quasi-identity with its four-way graph-algebra characterization.
//
// Scope semantics: a property that HOLDS here holds on this algebra only
// (instance level); a property that FAILS here fails in the whole variety the
// algebra generates, and the witness is a genuine counterexample.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/centrality.hpp"
#include "ualg/congruence.hpp"
#include "ualg/partition.hpp"

namespace ualg {

struct PropertyReport {
  std::string id;  // canonical property name, e.g. "commutativity"
  bool holds = true;
  std::vector<Partition> witness;  // violating congruence tuple when !holds
  std::string witness_detail;      // violating data (commutator values, quads)
  std::size_t triples_checked = 0;

  /// Human-readable scope of the verdict (see file comment).
  std::string scope() const;
};

/// Precomputed tables shared by all property checks: the congruence lattice,
/// the commutator table comm[i][j] (lattice indices), and the centrality
/// table cent[i][j][k] = C(c_i,c_j;c_k).
struct PropertyContext {
  CongruenceLattice L;
  std::vector<std::vector<int>> comm;
  std::vector<std::vector<std::vector<char>>> cent;
};

PropertyContext property_context(const FiniteAlgebra& alg,
                                 std::size_t lattice_budget = kLatticeBudget,
                                 std::size_t closure_budget = kClosureBudget);

// The ten properties, in the canonical order.  Witness tuples list the
// violating congruences in the order the property quantifies them; the first
// witness in lattice-index-lexicographic order is returned.
PropertyReport check_commutativity(const PropertyContext& ctx);
PropertyReport check_left_distributivity(const PropertyContext& ctx);
PropertyReport check_right_distributivity(const PropertyContext& ctx);
PropertyReport check_right_semidistributivity(const PropertyContext& ctx);
PropertyReport check_right_annihilators(const PropertyContext& ctx);
PropertyReport check_relative_right_annihilators(const PropertyContext& ctx);
PropertyReport check_centralizer_symmetry(const PropertyContext& ctx);
PropertyReport check_centralizer_determined(const PropertyContext& ctx);
PropertyReport check_stability(const PropertyContext& ctx);
PropertyReport check_weak_stability(const PropertyContext& ctx);

/// The refinement quasi-identity  [b,a]=0 & [a,a^b]=0  =>  [a,b]=0, together
/// with the four-way equivalence
///   (a) [b,a]=0 & [a,a^b]=0
///   (b) Delta_{a,b} meets both projection kernels of A(a) trivially
///   (c) [a,b]=0 & [b,a^b]=0
///   (d) Delta_{b,a} meets both projection kernels of A(b) trivially
/// checked for every congruence pair.  Fails if the quasi-identity or the
/// equivalence breaks on some pair.
PropertyReport check_refinement_quasiidentity(const FiniteAlgebra& alg,
                                              const PropertyContext& ctx);

/// All of the above in canonical order (ten properties, then the
/// quasi-identity), sharing one context.
std::vector<PropertyReport> check_all(const FiniteAlgebra& alg,
                                      std::size_t lattice_budget = kLatticeBudget,
                                      std::size_t closure_budget = kClosureBudget);

// Convenience wrappers building a fresh context.
PropertyReport check_commutativity(const FiniteAlgebra& alg);
PropertyReport check_left_distributivity(const FiniteAlgebra& alg);
PropertyReport check_right_distributivity(const FiniteAlgebra& alg);
PropertyReport check_right_semidistributivity(const FiniteAlgebra& alg);
PropertyReport check_right_annihilators(const FiniteAlgebra& alg);
PropertyReport check_relative_right_annihilators(const FiniteAlgebra& alg);
PropertyReport check_centralizer_symmetry(const FiniteAlgebra& alg);
PropertyReport check_centralizer_determined(const FiniteAlgebra& alg);
PropertyReport check_stability(const FiniteAlgebra& alg);
PropertyReport check_weak_stability(const FiniteAlgebra& alg);
PropertyReport check_refinement_quasiidentity(const FiniteAlgebra& alg);

}  // namespace ualg
