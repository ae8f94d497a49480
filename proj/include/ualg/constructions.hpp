// constructions.hpp
//
// Proofs-as-algorithms: the better-pentagon transformation, commutator
// noncommutativity normalization, the left/right distributivity-failure
// gadgets, the abelian-pentagon pipeline, and the herringbone construction
// that witnesses failure of right semidistributivity.
//
// Every "verify" step is a hard machine-checked assertion recorded in the
// returned report; nothing is trusted from the construction itself.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/centrality.hpp"
#include "ualg/congruence.hpp"
#include "ualg/graph_algebra.hpp"
#include "ualg/partition.hpp"

namespace ualg {

// ===== reports =====

struct CheckedAssertion {
  std::string label;   // stable identifier, e.g. "psi_lt_omega"
  bool passed = false;
  std::string detail;  // witness or context text

  CheckedAssertion() = default;
  CheckedAssertion(std::string l, bool p, std::string d = "")
      : label(std::move(l)), passed(p), detail(std::move(d)) {}
};

struct NamedCongruence {
  std::string label;
  Partition value;
};

/// Report of a pentagon-transforming construction: the input pentagon, the
/// derived algebra, every labeled congruence built along the way, and the
/// full list of machine-checked assertions.
struct PentagonReport {
  Pentagon input;                             // indices into the input lattice
  std::vector<NamedCongruence> input_labels;  // resolved input partitions
  FiniteAlgebra derived_algebra;
  std::vector<NamedCongruence> derived_labels;
  std::vector<CheckedAssertion> checks;
  std::string provenance;  // how the result was reached (case, shrink step...)

  bool ok() const;
  /// Look up a derived congruence by label; throws argument_error if absent.
  const Partition& derived(const std::string& label) const;
};

/// The five congruences of a pentagon, resolved to partitions.
struct PentagonLabels {
  Partition bottom, beta, delta, theta, top;
};

PentagonLabels resolve_pentagon(const CongruenceLattice& L, const Pentagon& P);

// ===== better pentagons =====

/// From a pentagon with C(theta,theta;delta) and not C(beta,theta;delta),
/// construct on A(beta) the congruences
///   gamma1 = delta1 v (delta2 ^ Delta),  Psi = (delta1 ^ Delta) v (delta2 ^ Delta),
///   Omega = Delta_{beta,gamma} v Psi,    bot = delta1 ^ Delta,
/// where Delta = Delta_{beta,theta} and gamma is recovered by projecting
/// gamma1 to the first coordinate.  Returns B = A(beta)/bot carrying the new
/// pentagon (0, beta' = delta1/bot, delta' = Psi/bot, theta' = Omega/bot,
/// top = alpha' = gamma1/bot), with C(alpha',alpha';beta') and
/// C(theta',theta';0) machine-verified.
PentagonReport better_pentagon(const FiniteAlgebra& alg, const PentagonLabels& P);

// ===== noncommutativity normalization =====

struct NormalizedPair {
  FiniteAlgebra algebra;      // A / eps
  std::vector<int> block_of;  // base element -> quotient element
  Partition eps;              // [delta,gamma] on the input algebra
  Partition alpha, beta;      // gamma/eps, delta/eps
  std::vector<CheckedAssertion> checks;
  bool ok() const;
};

/// Pre: [gamma,delta] is not below [delta,gamma].  Quotient by eps = [delta,gamma]
/// and return alpha = gamma/eps, beta = delta/eps with [beta,alpha] = 0 < [alpha,beta].
NormalizedPair normalize_noncommutativity(const FiniteAlgebra& alg, const Partition& gamma,
                                          const Partition& delta);

// ===== distributivity gadgets =====

struct DistributivityGadget {
  GraphAlgebra graph;  // A(alpha)
  std::vector<NamedCongruence> labels;
  // left gadget: a pair of distinct diagonal elements related by the joined
  // commutator (derived-element indices)
  std::pair<int, int> witness_diagonal{-1, -1};
  // right gadget: the witness matrix ((r,p),(r,q),(r,r),(r,s)) as derived ids
  std::array<int, 4> witness_matrix{-1, -1, -1, -1};
  std::vector<CheckedAssertion> checks;
  bool ok() const;
};

/// Pre: [beta,alpha] = 0 < [alpha,beta].  In A(alpha) with Delta = Delta_{alpha,beta}:
/// the diagonal is a union of singleton ([eta1,Delta] v [eta2,Delta])-classes
/// but not of singleton [eta1 v eta2, Delta]-classes, so the commutator is not
/// left distributive on A(alpha).
DistributivityGadget left_distributivity_gadget(const FiniteAlgebra& alg,
                                                const Partition& alpha,
                                                const Partition& beta);

/// Pre: beta <= alpha and [beta,alpha] = 0 < [alpha,beta].  In A(alpha):
/// [eta1, eta2 v Delta] != [eta1,eta2] v [eta1,Delta]; the returned matrix
/// ((r,p),(r,q),(r,r),(r,s)) is an eta1,beta2-matrix witnessing the failure,
/// and eta2 v Delta = beta2 is asserted along the way.
DistributivityGadget right_distributivity_gadget(const FiniteAlgebra& alg,
                                                 const Partition& alpha,
                                                 const Partition& beta);

// ===== abelian-pentagon pipeline =====

/// Search Con(alg) for a pentagon that can be transformed so that, writing
/// alpha for the top, (1) [alpha,theta] = 0, (2) C(theta,alpha;delta), and
/// (3) [alpha,x]_delta = x for every x in I[delta,theta] all hold.  Pentagons
/// are tried in enumeration order; within one, the critical interval is
/// shrunk to an abelian one via the first x with [x,x]_delta < x, then
/// better_pentagon is applied.  Returns the first success, or nullopt.
std::optional<PentagonReport> abelian_pentagon_pipeline(
    const FiniteAlgebra& alg, std::size_t lattice_budget = kLatticeBudget,
    std::size_t closure_budget = kClosureBudget);

// ===== herringbone =====

/// State of the alternating congruence sequences on D = b(alpha_bar):
///   Delta^1 = Delta,          Delta^{2n+1} = Delta v eta^{2n},
///   Gamma^0 = Gamma,          Gamma^{2n+2} = Gamma v eta^{2n+1},
///   eta^0 = 0,  eta^{2n+1} = eta ^ Delta^{2n+1},  eta^{2n} = eta ^ Gamma^{2n},
/// where eta = eta1, Delta = Delta_{alpha_bar,theta_bar}, Gamma = theta1 ^ eta2.
struct HerringboneState {
  FiniteAlgebra b;
  Partition theta_bar, alpha_bar;
  GraphAlgebra D;  // b(alpha_bar)
  Partition eta, Delta, Gamma;
  std::vector<Partition> eta_seq;    // eta_seq[k] = eta^k, k = 0..K
  std::vector<Partition> delta_seq;  // delta_seq[n] = Delta^{2n+1}
  std::vector<Partition> gamma_seq;  // gamma_seq[n] = Gamma^{2n}
  Partition eta_inf, delta_inf, gamma_inf;
  /// Largest k whose step changed some sequence value (0 when nothing moved);
  /// all three sequences are constant beyond it.
  int stabilization_index = 0;
  std::vector<CheckedAssertion> checks;

  bool ok() const;
  // Sequence values for arbitrary k (constant beyond stabilization).
  Partition eta_at(int k) const;
  Partition delta_at(int odd_k) const;   // odd_k = 1,3,5,...
  Partition gamma_at(int even_k) const;  // even_k = 0,2,4,...
};

/// Pre (all machine-checked): 0 < theta_bar < alpha_bar, [theta_bar,alpha_bar] = 0,
/// [alpha_bar,theta_bar] = theta_bar.  Iterates the sequences to stabilization
/// and verifies the ordering claims: monotone chains below Delta v Gamma,
/// eta ^ Delta_inf = eta_inf = eta ^ Gamma_inf, Delta_inf v Gamma_inf = Delta v Gamma
/// <= theta1 ^ theta2, the five-element sublattice identities, and the
/// closed-form meets/joins between the central and side chains.
HerringboneState herringbone(const FiniteAlgebra& b, const Partition& theta_bar,
                             const Partition& alpha_bar);

// ===== semidistributivity failure =====

struct SdFailureReport {
  PentagonReport pipeline;  // output of abelian_pentagon_pipeline
  FiniteAlgebra b;          // pipeline algebra / delta
  HerringboneState state;
  std::array<int, 4> base_witness{-1, -1, -1, -1};  // (p,q,r,s) on b, p = q
  std::array<int, 4> matrix{-1, -1, -1, -1};  // ((r,p),(r,q),(r,r),(r,s)) as D indices
  std::vector<int> U;                         // witness theta1^theta2-class of (r,r)
  FiniteAlgebra E;                            // D / eta_inf
  std::vector<int> block_of;                  // D element -> E element
  Partition x, y, z;  // eta/eta_inf, Delta_inf/eta_inf, Gamma_inf/eta_inf
  std::vector<CheckedAssertion> checks;

  bool ok() const;
};

/// Full pipeline: abelian_pentagon_pipeline, quotient to b, herringbone,
/// witness matrix, then E = D/eta_inf with x,y,z verifying [x,y] = 0,
/// [x,z] = 0, [x,y v z] != 0 — a concrete failure of right semidistributivity
/// and of right-annihilator existence.  Returns nullopt when no pentagon
/// pipeline applies.
std::optional<SdFailureReport> semidistributivity_failure(
    const FiniteAlgebra& alg, std::size_t lattice_budget = kLatticeBudget,
    std::size_t closure_budget = kClosureBudget);

}  // namespace ualg
