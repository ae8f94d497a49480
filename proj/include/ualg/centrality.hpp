// centrality.hpp
//
// The centralizer relation C(alpha,beta;delta), the term-condition commutator
// [alpha,beta] and its relative form, annihilators, abelian/neutral interval
// tests, and the solvability relation.
//
// M(alpha,beta) is realized as the subpower of A^4 generated by
//   {(a,a,b,b) : (a,b) in alpha}  u  {(u,v,u,v) : (u,v) in beta};
// closing these under coordinatewise terms yields exactly the quadruples
// (t(a,u), t(a,v), t(b,u), t(b,v)), read as 2x2 matrices [[p,q],[r,s]].

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/closure.hpp"
#include "ualg/congruence.hpp"
#include "ualg/partition.hpp"

namespace ualg {

struct MatrixSet {
  Partition alpha, beta;
  TupleSet quads;  // power-4 closure; element (p,q,r,s) is the matrix [[p,q],[r,s]]

  std::size_t size() const { return quads.elements.size(); }
  std::array<int, 4> quad(std::size_t i) const {
    const auto& e = quads.elements[i];
    return {e[0], e[1], e[2], e[3]};
  }
  bool contains(const std::array<int, 4>& q) const {
    return quads.contains({q[0], q[1], q[2], q[3]});
  }
};

/// The full set M(alpha,beta) in deterministic closure order.
MatrixSet matrix_set(const FiniteAlgebra& alg, const Partition& alpha,
                     const Partition& beta, std::size_t budget = kClosureBudget);

/// A violating quadruple (p,q,r,s): (p,q) in delta but (r,s) not in delta.
struct CentralityWitness {
  std::array<int, 4> quad{-1, -1, -1, -1};
};

/// C(alpha,beta;delta) by direct scan of M(alpha,beta).  On failure the
/// witness (if requested) is the lexicographically least violating quadruple.
bool centralizes(const FiniteAlgebra& alg, const Partition& alpha, const Partition& beta,
                 const Partition& delta, CentralityWitness* witness = nullptr,
                 std::size_t budget = kClosureBudget);

/// Independent implementation via the Delta-method: build B = A(beta) and
/// Delta_{beta,alpha} (congruence of A(beta) generated by the alpha-diagonal);
/// C(alpha,beta;delta) holds iff every Delta_{beta,alpha}-class is pure for
/// delta-membership of its pairs.  Must agree with `centralizes` everywhere.
bool centralizes_delta(const FiniteAlgebra& alg, const Partition& alpha,
                       const Partition& beta, const Partition& delta,
                       CentralityWitness* witness = nullptr);

/// [alpha,beta]: least delta with C(alpha,beta;delta), by iterated forcing
/// over M(alpha,beta) with congruence generation between rounds.
Partition commutator(const FiniteAlgebra& alg, const Partition& alpha,
                     const Partition& beta, std::size_t budget = kClosureBudget);

/// [alpha,beta]_eps: the same fixpoint seeded with delta_0 = eps; the least
/// congruence above eps with C(alpha,beta;delta).
Partition relative_commutator(const FiniteAlgebra& alg, const Partition& alpha,
                              const Partition& beta, const Partition& eps,
                              std::size_t budget = kClosureBudget);

/// (delta : beta)_L — the largest gamma with C(gamma,beta;delta); always
/// exists (join of the centralizing principal congruences).
Partition left_annihilator(const FiniteAlgebra& alg, const Partition& beta,
                           const Partition& delta);

struct RightAnnihilator {
  bool exists = false;
  Partition value;  // the annihilator when it exists
  // When it does not: two congruences, each centralized, whose join is not.
  Partition witness_y, witness_y2;
};

/// (delta : beta)_R — the largest gamma with C(beta,gamma;delta), when it
/// exists; otherwise a non-existence witness pair.
RightAnnihilator right_annihilator(const FiniteAlgebra& alg, const Partition& beta,
                                   const Partition& delta);

/// C(theta,theta;delta): the interval I[delta,theta] is abelian.
bool is_abelian_over(const FiniteAlgebra& alg, const Partition& theta,
                     const Partition& delta);

/// True iff the interval I[delta,theta] of L contains no nontrivial abelian
/// subinterval: [y,y]_x = y for all x < y inside it.  Pre: delta <= theta.
bool is_neutral_interval(const CongruenceLattice& L, const Partition& delta,
                         const Partition& theta);

struct SolvabilityResult {
  bool related = false;
  std::vector<int> chain;  // lattice indices from gamma^delta up to gamma v delta
};

/// gamma ~s delta: reachability from gamma^delta to gamma v delta along edges
/// x -> y with x <= y and C(y,y;x); returns a shortest witnessing chain
/// (ties broken by lattice order).
SolvabilityResult solvably_related(const CongruenceLattice& L, const Partition& gamma,
                                   const Partition& delta);

}  // namespace ualg
