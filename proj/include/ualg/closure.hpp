// closure.hpp
//
// Subpower closure: the least subset of A^d containing given generator
// vectors and closed under the coordinatewise operations of A.  This single
// routine carries generated subalgebras of powers, the matrix sets M(S,T)
// (d = 4), and free algebras (d = n^k).
//
// Element order is fully deterministic: breadth-first from the sorted,
// deduplicated generators; within one frontier pass, children are produced in
// operation-index order, then lexicographic order of argument index tuples.
// Every element records provenance (generator index, or operation + earlier
// element indices) from which a witnessing term can be rebuilt.

#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "ualg/algebra.hpp"

namespace ualg {

/// Default cap on closure size (number of elements).
inline constexpr std::size_t kClosureBudget = std::size_t{1} << 20;

struct TupleProvenance {
  int generator = -1;     // index into the sorted generator list, or
  int op = -1;            // operation index ...
  std::vector<int> args;  // ... applied to these earlier element indices
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct TupleSet {
  int power = 0;                            // d
  std::vector<std::vector<int>> elements;   // discovery order, no duplicates
  std::vector<TupleProvenance> provenance;  // parallel to elements
  bool complete = true;                     // false only from the partial variant

  int index_of(const std::vector<int>& v) const {
    auto it = lookup.find(v);
    return it == lookup.end() ? -1 : it->second;
  }
  bool contains(const std::vector<int>& v) const { return index_of(v) >= 0; }

  std::unordered_map<std::vector<int>, int, VectorHash> lookup;
};

/// Closure of the generators under all operations; throws budget_error
/// (reporting the partial size) if more than `budget` elements appear.
TupleSet subpower_closure(const FiniteAlgebra& alg, int power,
                          const std::vector<std::vector<int>>& generators,
                          std::size_t budget = kClosureBudget);

/// Same computation, but on budget exhaustion returns the partial set with
/// complete = false instead of throwing.  Used by bounded-depth term search.
TupleSet subpower_closure_partial(const FiniteAlgebra& alg, int power,
                                  const std::vector<std::vector<int>>& generators,
                                  std::size_t budget = kClosureBudget);

/// Rebuild a term witnessing element `index`: variables are generator indices.
Term provenance_term(const TupleSet& ts, int index);

/// Membership test with early exit: runs the same breadth-first closure but
/// returns true as soon as `target` is produced, without storing provenance.
/// Cheaper than a full closure when the target appears early; throws
/// budget_error like subpower_closure when the budget is exhausted first.
bool closure_contains(const FiniteAlgebra& alg, int power,
                      const std::vector<std::vector<int>>& generators,
                      const std::vector<int>& target,
                      std::size_t budget = kClosureBudget);

}  // namespace ualg
