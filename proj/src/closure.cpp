// closure.cpp
//
// Deterministic breadth-first subpower closure with provenance.

#include "ualg/closure.hpp"

#include <algorithm>

#include "ualg/errors.hpp"

namespace ualg {

namespace {

TupleSet closure_impl(const FiniteAlgebra& alg, int power,
                      const std::vector<std::vector<int>>& generators,
                      std::size_t budget, bool allow_partial) {
  if (power < 1) throw argument_error("subpower_closure: power must be >= 1");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != power)
      throw argument_error("generator vector has wrong length");
    for (int v : g)
      if (v < 0 || v >= alg.size) throw argument_error("generator value out of range");
  }

  TupleSet ts;
  ts.power = power;

  // Sorted, deduplicated generators seed the element list.
  std::vector<std::vector<int>> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  auto over_budget = [&]() { return ts.elements.size() > budget; };
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    ts.lookup.emplace(gens[gi], static_cast<int>(ts.elements.size()));
    ts.elements.push_back(gens[gi]);
    TupleProvenance p;
    p.generator = static_cast<int>(gi);
    ts.provenance.push_back(std::move(p));
    if (over_budget()) {
      if (allow_partial) {
        ts.complete = false;
        return ts;
      }
      throw budget_error("subpower_closure budget exceeded", ts.elements.size());
    }
  }

  // Frontier passes: apply every operation to every argument tuple drawn from
  // the elements known at the start of the pass, where at least one argument
  // lies in the newest frontier.  New elements are appended in operation-index
  // order, then lexicographic argument-tuple order.
  std::vector<int> child(power);
  auto append = [&](std::vector<int> value, TupleProvenance p) -> bool {
    ts.lookup.emplace(value, static_cast<int>(ts.elements.size()));
    ts.elements.push_back(std::move(value));
    ts.provenance.push_back(std::move(p));
    if (over_budget()) {
      if (allow_partial) {
        ts.complete = false;
        return false;
      }
      throw budget_error("subpower_closure budget exceeded", ts.elements.size());
    }
    return true;
  };

  std::size_t frontier_start = 0;
  bool first_pass = true;
  while (first_pass || frontier_start < ts.elements.size()) {
    const std::size_t cur = ts.elements.size();
    for (std::size_t oi = 0; oi < alg.ops.size(); ++oi) {
      const auto& op = alg.ops[oi];
      const int k = op.arity;
      if (k == 0) {
        if (!first_pass) continue;  // constants never change after pass one
        for (int c = 0; c < power; ++c) child[c] = op.table[0];
        if (!ts.lookup.count(child)) {
          TupleProvenance p;
          p.op = static_cast<int>(oi);
          if (!append(child, std::move(p))) return ts;
        }
        continue;
      }
      if (cur == 0) continue;  // no argument tuples yet
      std::vector<std::size_t> args(k, 0);
      while (true) {
        // Skip tuples whose arguments are all pre-frontier: those were
        // enumerated in an earlier pass.
        bool touches_frontier = first_pass;
        for (int i = 0; !touches_frontier && i < k; ++i)
          if (args[i] >= frontier_start) touches_frontier = true;
        if (touches_frontier) {
          for (int c = 0; c < power; ++c) {
            std::size_t idx = 0;
            for (int i = 0; i < k; ++i)
              idx = idx * static_cast<std::size_t>(alg.size) +
                    static_cast<std::size_t>(ts.elements[args[i]][c]);
            child[c] = op.table[idx];
          }
          if (!ts.lookup.count(child)) {
            TupleProvenance p;
            p.op = static_cast<int>(oi);
            p.args.assign(args.begin(), args.end());
            if (!append(child, std::move(p))) return ts;
          }
        }
        int i = k - 1;
        for (; i >= 0; --i) {
          if (++args[i] < cur) break;
          args[i] = 0;
        }
        if (i < 0) break;
      }
    }
    frontier_start = cur;
    first_pass = false;
  }
  return ts;
}

}  // namespace

TupleSet subpower_closure(const FiniteAlgebra& alg, int power,
                          const std::vector<std::vector<int>>& generators,
                          std::size_t budget) {
  return closure_impl(alg, power, generators, budget, false);
}

TupleSet subpower_closure_partial(const FiniteAlgebra& alg, int power,
                                  const std::vector<std::vector<int>>& generators,
                                  std::size_t budget) {
  return closure_impl(alg, power, generators, budget, true);
}

bool closure_contains(const FiniteAlgebra& alg, int power,
                      const std::vector<std::vector<int>>& generators,
                      const std::vector<int>& target, std::size_t budget) {
  if (static_cast<int>(target.size()) != power)
    throw argument_error("closure_contains: target has wrong length");
  // Provenance-free rerun of the same breadth-first order, stopping at the
  // first sighting of the target.
  if (power < 1) throw argument_error("closure_contains: power must be >= 1");
  std::vector<std::vector<int>> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<std::vector<int>> elements;
  std::unordered_map<std::vector<int>, int, VectorHash> lookup;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != power)
      throw argument_error("generator vector has wrong length");
    for (int v : g)
      if (v < 0 || v >= alg.size) throw argument_error("generator value out of range");
    if (g == target) return true;
    lookup.emplace(g, static_cast<int>(elements.size()));
    elements.push_back(g);
    if (elements.size() > budget)
      throw budget_error("closure_contains budget exceeded", elements.size());
  }

  std::vector<int> child(power);
  std::size_t frontier_start = 0;
  bool first_pass = true;
  while (first_pass || frontier_start < elements.size()) {
    const std::size_t cur = elements.size();
    for (std::size_t oi = 0; oi < alg.ops.size(); ++oi) {
      const auto& op = alg.ops[oi];
      const int k = op.arity;
      if (k == 0) {
        if (!first_pass) continue;
        for (int c = 0; c < power; ++c) child[c] = op.table[0];
        if (child == target) return true;
        if (!lookup.count(child)) {
          lookup.emplace(child, static_cast<int>(elements.size()));
          elements.push_back(child);
          if (elements.size() > budget)
            throw budget_error("closure_contains budget exceeded", elements.size());
        }
        continue;
      }
      if (cur == 0) continue;
      std::vector<std::size_t> args(k, 0);
      while (true) {
        bool touches_frontier = first_pass;
        for (int i = 0; !touches_frontier && i < k; ++i)
          if (args[i] >= frontier_start) touches_frontier = true;
        if (touches_frontier) {
          for (int c = 0; c < power; ++c) {
            std::size_t idx = 0;
            for (int i = 0; i < k; ++i)
              idx = idx * static_cast<std::size_t>(alg.size) +
                    static_cast<std::size_t>(elements[args[i]][c]);
            child[c] = op.table[idx];
          }
          if (child == target) return true;
          if (!lookup.count(child)) {
            lookup.emplace(child, static_cast<int>(elements.size()));
            elements.push_back(child);
            if (elements.size() > budget)
              throw budget_error("closure_contains budget exceeded", elements.size());
          }
        }
        int i = k - 1;
        for (; i >= 0; --i) {
          if (++args[i] < cur) break;
          args[i] = 0;
        }
        if (i < 0) break;
      }
    }
    frontier_start = cur;
    first_pass = false;
  }
  return false;
}

Term provenance_term(const TupleSet& ts, int index) {
  if (index < 0 || index >= static_cast<int>(ts.elements.size()))
    throw argument_error("provenance_term: element index out of range");
  std::vector<Term> memo(static_cast<std::size_t>(index) + 1);
  // Provenance only references earlier elements, so one ascending pass fills
  // every prerequisite before it is used.
  for (int i = 0; i <= index; ++i) {
    const auto& p = ts.provenance[i];
    if (p.generator >= 0) {
      memo[i] = Term::variable(p.generator);
    } else {
      std::vector<Term> children;
      children.reserve(p.args.size());
      for (int a : p.args) children.push_back(memo[a]);
      memo[i] = Term::apply(p.op, std::move(children));
    }
  }
  return memo[index];
}

}  // namespace ualg
