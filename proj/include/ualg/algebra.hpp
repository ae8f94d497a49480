// algebra.hpp
//
// Finite algebras as operation tables, with term evaluation, identity
// checking, direct products, and quotients.  This is the substrate every
// other module consumes.
//
// Conventions (bit-exact across the whole artifact):
//   * the universe of a size-n algebra is {0..n-1};
//   * an arity-k table is flattened lexicographically with the FIRST argument
//     most significant, so eval(f, a0..ak-1) = table[((a0*n + a1)*n + ...)];
//   * product elements (i,j) are encoded row-major as i*nb + j.

#pragma once

#include <string>
#include <vector>

#include "ualg/partition.hpp"

namespace ualg {

struct OperationTable {
  std::string name;
  int arity = 0;           // k >= 0; nullary operations are permitted
  std::vector<int> table;  // n^k entries

  bool operator==(const OperationTable&) const = default;
};

struct FiniteAlgebra {
  std::string name;
  int size = 0;  // n >= 1
  std::vector<OperationTable> ops;

  /// Index of the operation with the given name, or -1.
  int op_index(const std::string& op_name) const;

  bool operator==(const FiniteAlgebra&) const = default;
};

/// Validates size, arities, table lengths, value ranges, and that operation
/// names are nonempty and unique.  Throws argument_error on violation.
void validate(const FiniteAlgebra& a);

/// Table lookup at the lexicographic position of args.
int eval_op(const FiniteAlgebra& a, int op, const std::vector<int>& args);

// ===== terms =====

/// A term over variables x0..x(v-1): either a variable leaf or an operation
/// node whose children match the operation's arity.
struct Term {
  int var = -1;  // variable index when >= 0
  int op = -1;   // operation index when var < 0
  std::vector<Term> children;

  static Term variable(int v);
  static Term apply(int op_index, std::vector<Term> children);
  bool is_variable() const { return var >= 0; }
  /// Largest variable index appearing in the term, or -1 if none.
  int max_variable() const;

  bool operator==(const Term&) const = default;
};

int eval_term(const FiniteAlgebra& a, const Term& t, const std::vector<int>& assignment);

struct IdentityCheck {
  bool holds = false;
  std::vector<int> counterexample;  // first failing assignment (lexicographic)
};

/// True iff lhs and rhs evaluate equal under all n^vars assignments.
IdentityCheck check_identity(const FiniteAlgebra& a, const Term& lhs, const Term& rhs,
                             int vars);

// Canonical variable names for term text: x y z w x4 x5 ...
std::string variable_name(int index);

/// Prefix notation: variables by name, operation nodes as "(f a b)".
std::string term_to_text(const FiniteAlgebra& a, const Term& t);

/// Parse prefix notation against the algebra's operation names/arities.
Term parse_term(const FiniteAlgebra& a, const std::string& text);

// ===== products and quotients =====

/// Coordinatewise product; requires identical operation signatures.
/// Element (i,j) of the product is encoded as i*b.size + j.
FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// True iff theta respects every operation.  On failure, *why (if non-null)
/// describes a violating operation and argument tuple.
bool is_congruence(const FiniteAlgebra& a, const Partition& theta, std::string* why = nullptr);

struct QuotientResult {
  FiniteAlgebra algebra;      // universe = blocks of theta, numbered by least element
  std::vector<int> block_of;  // base element -> block index
};

/// Quotient by a congruence; throws precondition_error (naming the violating
/// operation and tuple) when theta is not a congruence.
QuotientResult quotient(const FiniteAlgebra& a, const Partition& theta);

}  // namespace ualg
