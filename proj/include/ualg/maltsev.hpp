// maltsev.hpp
//
// Free algebras over k generators realized as generated subpowers with term
// provenance, the free abelian quotient used to decide difference-term
// properties, and Taylor-term checks.
//
// The key reduction: a ternary term t is a right (resp. left) difference term
// for the variety generated by A iff t(x,x,y) = y (resp. t(x,y,y) = x) holds
// in Fbar = F(x,y) / [Cg(x,y),Cg(x,y)].  Soundness: the generator pair lies
// in the abelian congruence Cg(x,y)/[.,.] of Fbar.  Completeness: for any
// member B of the variety and any pair (a,b) in an abelian congruence of B,
// the homomorphism F -> B sending x,y to a,b factors through Fbar, carrying
// the Fbar equality to t(a,a,b) = b.  This turns a quantifier over the whole
// (infinite) variety into a finite computation.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/centrality.hpp"
#include "ualg/closure.hpp"
#include "ualg/congruence.hpp"
#include "ualg/partition.hpp"

namespace ualg {

// ===== free algebras =====

/// F(k) over A: the subalgebra of A^(n^k) generated by the k projection
/// vectors, whose elements are exactly the k-ary term operations of A.
/// coordinates[c] is the c-th assignment tuple (lexicographic, first variable
/// most significant), and elements.elements[e][c] is the value of term
/// operation e on that assignment.
struct FreeAlgebra {
  FiniteAlgebra base;
  int rank = 0;
  std::vector<std::vector<int>> coordinates;  // n^k assignment tuples
  TupleSet elements;                          // closure with provenance
  std::vector<int> generator_elements;        // element ids of the projections
  FiniteAlgebra algebra;                      // F materialized as a finite algebra

  /// Provenance term of an element, over variables x0..x(rank-1).
  Term term_of(int element) const;
};

/// Build F(k) over alg; deterministic order.  Throws budget_error if the
/// closure exceeds the budget.
FreeAlgebra free_algebra(const FiniteAlgebra& alg, int k,
                         std::size_t budget = kClosureBudget);

/// Fbar = F(2)/[theta,theta] for theta = Cg(x,y), with the generator images
/// and theta_bar = theta/[theta,theta]; [theta_bar,theta_bar] = 0 is
/// machine-verified (throws verification_error on failure).
struct FreeAbelianQuotient {
  FreeAlgebra free2;
  Partition theta;       // Cg^F(x,y)
  Partition theta_comm;  // [theta,theta] on F
  FiniteAlgebra fbar;    // F / [theta,theta]
  std::vector<int> block_of;
  int xbar = -1, ybar = -1;  // images of the generators in fbar
  Partition theta_bar;       // theta / [theta,theta]
};

FreeAbelianQuotient free_abelian_quotient(const FiniteAlgebra& alg,
                                          std::size_t budget = kClosureBudget);

// ===== term certificates =====

/// The certificate kinds, in canonical order.
enum class TermKind {
  right_maltsev,
  left_maltsev,
  maltsev,
  right_difference,
  left_difference,
  weak_difference,
  difference,
  taylor,
};

std::string term_kind_name(TermKind k);
std::optional<TermKind> parse_term_kind(const std::string& name);

struct TermCertificate {
  Term term;
  std::vector<TermKind> kinds;        // every kind the term satisfies
  std::vector<std::string> evidence;  // the checks that were run and passed

  bool has_kind(TermKind k) const;
};

/// Classify a term: Maltsev kinds by identity checking on A, difference kinds
/// by the two equalities in Fbar, Taylor by is_taylor_term.  Ternary kinds
/// require max_variable() <= 2 and are skipped otherwise.
TermCertificate classify_term(const FiniteAlgebra& alg, const Term& t,
                              std::size_t budget = kClosureBudget);

struct TermSearchResult {
  /// "found", "none" (exact: every ternary term operation was enumerated and
  /// rejected), or "inconclusive" (budget exhausted before exhausting F(3)).
  std::string outcome;
  std::optional<TermCertificate> certificate;  // set when outcome == "found"
  std::string note;  // search statistics / inconclusive depth
};

/// Search the ternary term operations of A (the elements of F(3), in closure
/// order) for one of the requested kind.  The certificate conditions depend
/// only on the term operation, so "none" is exact whenever F(3) closes within
/// budget; otherwise a bounded enumeration is classified and the result is
/// flagged inconclusive with the depth reached.
TermSearchResult find_term(const FiniteAlgebra& alg, TermKind kind,
                           std::size_t budget = kClosureBudget);

// ===== Taylor terms =====

struct TaylorWitness {
  int place = -1;
  std::vector<int> w, z;  // variable patterns over {0,1} = {x,y}; w[place]=0, z[place]=1
};

struct TaylorReport {
  bool holds = false;
  IdentityCheck idempotence;            // T(x,..,x) = x on A
  std::vector<TaylorWitness> witnesses;  // one per place when holds
  std::string failure;                   // what failed otherwise
};

/// Check that t is a Taylor term for the variety generated by A: idempotent,
/// and for each place i some identity T(w) = T(z) with w_i = x, z_i = y holds
/// in A.  Searching {x,y}-valued patterns is complete: any witnessing
/// identity maps onto such a pattern under the substitution sending the i-th
/// right-hand variable to y and every other variable to x.
/// arity 0 means the natural arity max_variable()+1.
TaylorReport is_taylor_term(const FiniteAlgebra& alg, const Term& t, int arity = 0);

struct TaylorExistence {
  bool has_taylor = false;
  // Witness when false: a subalgebra and a 2-block congruence of it whose
  // quotient interprets every basic operation as a projection.
  std::vector<int> subuniverse;
  Partition two_block;
  std::string detail;
};

/// For idempotent A (every basic operation has arity >= 1 and satisfies
/// f(x,..,x) = x; precondition_error otherwise): the variety of A has a
/// Taylor term iff no 2-element quotient of a subalgebra of A interprets
/// every basic operation as a projection.
TaylorExistence has_taylor_term_idempotent(const FiniteAlgebra& alg,
                                           std::size_t budget = kClosureBudget);

}  // namespace ualg
