// maltsev.cpp
//
// Free algebras with provenance, the free abelian quotient, term
// classification and search, and Taylor-term checks.

#include "ualg/maltsev.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ualg/errors.hpp"

namespace ualg {

namespace {

/// n^k as int, guarding overflow.
int int_power(int n, int k) {
  long long p = 1;
  for (int i = 0; i < k; ++i) {
    p *= n;
    if (p > 1'000'000'000) throw argument_error("free algebra dimension overflows");
  }
  return static_cast<int>(p);
}

/// The k projection vectors in A^(n^k) plus the assignment tuples.
struct ProjectionBasis {
  int dim = 0;
  std::vector<std::vector<int>> coordinates;
  std::vector<std::vector<int>> projections;
};

ProjectionBasis projection_basis(const FiniteAlgebra& alg, int k) {
  if (k < 1) throw argument_error("free_algebra: rank must be >= 1");
  ProjectionBasis pb;
  pb.dim = int_power(alg.size, k);
  pb.coordinates.assign(pb.dim, std::vector<int>(k, 0));
  for (int c = 0; c < pb.dim; ++c) {
    int rest = c;
    for (int i = k - 1; i >= 0; --i) {
      pb.coordinates[c][i] = rest % alg.size;
      rest /= alg.size;
    }
  }
  pb.projections.assign(k, std::vector<int>(pb.dim, 0));
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < pb.dim; ++c) pb.projections[i][c] = pb.coordinates[c][i];
  return pb;
}

/// Replace each variable i of t by variable map[i].
Term subst_vars(const Term& t, const std::vector<int>& map) {
  if (t.is_variable()) {
    if (t.var >= static_cast<int>(map.size()))
      throw argument_error("substitution map too short for term");
    return Term::variable(map[t.var]);
  }
  std::vector<Term> children;
  children.reserve(t.children.size());
  for (const Term& c : t.children) children.push_back(subst_vars(c, map));
  return Term::apply(t.op, std::move(children));
}

}  // namespace

// ===== free algebras =====

Term FreeAlgebra::term_of(int element) const { return provenance_term(elements, element); }

FreeAlgebra free_algebra(const FiniteAlgebra& alg, int k, std::size_t budget) {
  validate(alg);
  FreeAlgebra F;
  F.base = alg;
  F.rank = k;
  ProjectionBasis pb = projection_basis(alg, k);
  F.coordinates = std::move(pb.coordinates);
  // The projections sort ascending (projection i first differs from
  // projection j > i at assignment n^(k-1-j), where it is still 0), so
  // generator index = variable index in every provenance term.
  F.elements = subpower_closure(alg, pb.dim, pb.projections, budget);
  for (const auto& proj : pb.projections)
    F.generator_elements.push_back(F.elements.index_of(proj));

  // Materialize F as a finite algebra: operations act coordinatewise.
  const int f = static_cast<int>(F.elements.elements.size());
  F.algebra.name = "F" + std::to_string(k) + "(" + alg.name + ")";
  F.algebra.size = f;
  for (const auto& op : alg.ops) {
    OperationTable t;
    t.name = op.name;
    t.arity = op.arity;
    std::size_t rows = 1;
    for (int i = 0; i < op.arity; ++i) {
      rows *= static_cast<std::size_t>(f);
      if (rows > (std::size_t{1} << 28))
        throw budget_error("free algebra operation table too large", rows);
    }
    t.table.assign(rows, 0);
    std::vector<int> args(static_cast<std::size_t>(op.arity), 0);
    std::vector<int> image(static_cast<std::size_t>(pb.dim), 0);
    for (std::size_t row = 0; row < rows; ++row) {
      std::size_t rest = row;
      for (int i = op.arity - 1; i >= 0; --i) {
        args[i] = static_cast<int>(rest % static_cast<std::size_t>(f));
        rest /= static_cast<std::size_t>(f);
      }
      for (int c = 0; c < pb.dim; ++c) {
        std::size_t idx = 0;
        for (int i = 0; i < op.arity; ++i)
          idx = idx * static_cast<std::size_t>(alg.size) +
                static_cast<std::size_t>(F.elements.elements[args[i]][c]);
        image[c] = op.table[idx];
      }
      int id = F.elements.index_of(image);
      if (id < 0) throw verification_error("free algebra closure is not closed");
      t.table[row] = id;
    }
    F.algebra.ops.push_back(std::move(t));
  }
  return F;
}

FreeAbelianQuotient free_abelian_quotient(const FiniteAlgebra& alg, std::size_t budget) {
  FreeAbelianQuotient out;
  out.free2 = free_algebra(alg, 2, budget);
  const int x = out.free2.generator_elements[0];
  const int y = out.free2.generator_elements.size() > 1 ? out.free2.generator_elements[1] : x;
  out.theta = cg(out.free2.algebra, x, y);
  out.theta_comm = commutator(out.free2.algebra, out.theta, out.theta, budget);
  QuotientResult q = quotient(out.free2.algebra, out.theta_comm);
  out.fbar = std::move(q.algebra);
  out.fbar.name = "Fbar(" + alg.name + ")";
  out.block_of = std::move(q.block_of);
  out.xbar = out.block_of[x];
  out.ybar = out.block_of[y];
  out.theta_bar = quotient_partition(out.theta, out.theta_comm);
  if (commutator(out.fbar, out.theta_bar, out.theta_bar, budget) !=
      Partition::equality(out.fbar.size))
    throw verification_error("free abelian quotient: [theta_bar,theta_bar] != 0");
  return out;
}

// ===== term certificates =====

std::string term_kind_name(TermKind k) {
  switch (k) {
    case TermKind::right_maltsev: return "right-maltsev";
    case TermKind::left_maltsev: return "left-maltsev";
    case TermKind::maltsev: return "maltsev";
    case TermKind::right_difference: return "right-difference";
    case TermKind::left_difference: return "left-difference";
    case TermKind::weak_difference: return "weak-difference";
    case TermKind::difference: return "difference";
    case TermKind::taylor: return "taylor";
  }
  throw argument_error("unknown term kind");
}

std::optional<TermKind> parse_term_kind(const std::string& name) {
  static const TermKind all[] = {
      TermKind::right_maltsev,    TermKind::left_maltsev,   TermKind::maltsev,
      TermKind::right_difference, TermKind::left_difference, TermKind::weak_difference,
      TermKind::difference,       TermKind::taylor};
  for (TermKind k : all)
    if (term_kind_name(k) == name) return k;
  return std::nullopt;
}

bool TermCertificate::has_kind(TermKind k) const {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

namespace {

/// Classify against every kind; faq may be null (difference kinds skipped).
TermCertificate classify_impl(const FiniteAlgebra& alg, const Term& t,
                              const FreeAbelianQuotient* faq) {
  TermCertificate cert;
  cert.term = t;
  const bool ternary = t.max_variable() <= 2;
  bool rm = false, lm = false, rd = false, ld = false;
  if (ternary) {
    IdentityCheck right = check_identity(alg, subst_vars(t, {0, 0, 1}),
                                         Term::variable(1), 2);
    IdentityCheck left = check_identity(alg, subst_vars(t, {0, 1, 1}),
                                        Term::variable(0), 2);
    rm = right.holds;
    lm = left.holds;
    if (rm) cert.evidence.push_back("t(x,x,y) = y holds on " + alg.name);
    if (lm) cert.evidence.push_back("t(x,y,y) = x holds on " + alg.name);
    if (faq) {
      rd = eval_term(faq->fbar, t, {faq->xbar, faq->xbar, faq->ybar}) == faq->ybar;
      ld = eval_term(faq->fbar, t, {faq->xbar, faq->ybar, faq->ybar}) == faq->xbar;
      if (rd)
        cert.evidence.push_back(
            "t(x,x,y) = y in the free abelian quotient over the principal "
            "congruence of the generators");
      if (ld)
        cert.evidence.push_back(
            "t(x,y,y) = x in the free abelian quotient over the principal "
            "congruence of the generators");
    }
  }
  if (rm) cert.kinds.push_back(TermKind::right_maltsev);
  if (lm) cert.kinds.push_back(TermKind::left_maltsev);
  if (rm && lm) cert.kinds.push_back(TermKind::maltsev);
  if (rd) cert.kinds.push_back(TermKind::right_difference);
  if (ld) cert.kinds.push_back(TermKind::left_difference);
  if (rd && ld) cert.kinds.push_back(TermKind::weak_difference);
  if (rm && ld) cert.kinds.push_back(TermKind::difference);
  TaylorReport tr = is_taylor_term(alg, t, std::max(1, t.max_variable() + 1));
  if (tr.holds) {
    cert.kinds.push_back(TermKind::taylor);
    cert.evidence.push_back("idempotent with an {x,y}-identity at every place");
  }
  return cert;
}

}  // namespace

TermCertificate classify_term(const FiniteAlgebra& alg, const Term& t,
                              std::size_t budget) {
  validate(alg);
  if (t.max_variable() <= 2) {
    FreeAbelianQuotient faq = free_abelian_quotient(alg, budget);
    return classify_impl(alg, t, &faq);
  }
  return classify_impl(alg, t, nullptr);
}

TermSearchResult find_term(const FiniteAlgebra& alg, TermKind kind, std::size_t budget) {
  validate(alg);
  TermSearchResult res;
  const int n = alg.size;

  // The free abelian quotient decides the difference kinds; without it those
  // kinds cannot be certified.
  std::optional<FreeAbelianQuotient> faq;
  try {
    faq.emplace(free_abelian_quotient(alg, budget));
  } catch (const budget_error&) {
    // Identity-decided kinds can still be searched without it.
  }
  const bool needs_faq = kind == TermKind::right_difference ||
                         kind == TermKind::left_difference ||
                         kind == TermKind::weak_difference || kind == TermKind::difference;
  if (needs_faq && !faq) {
    res.outcome = "inconclusive";
    res.note = "free abelian quotient exceeded the closure budget";
    return res;
  }

  // Enumerate the ternary term operations: the closure of the projections in
  // A^(n^3).  A complete closure makes a negative answer exact, because every
  // certificate condition depends only on the term operation.
  ProjectionBasis pb = projection_basis(alg, 3);
  TupleSet f3 = subpower_closure_partial(alg, pb.dim, pb.projections, budget);

  // Element depths (generators at 0) for reporting the search horizon.
  std::vector<int> depth(f3.elements.size(), 0);
  for (std::size_t e = 0; e < f3.elements.size(); ++e) {
    const auto& p = f3.provenance[e];
    if (p.generator >= 0) continue;
    int d = 0;
    for (int a : p.args) d = std::max(d, depth[a]);
    depth[e] = d + 1;
  }
  const int max_depth = depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());

  auto coord = [n](int a, int b, int c) { return (a * n + b) * n + c; };
  auto vector_has_kind = [&](const std::vector<int>& vec, TermKind k,
                             const Term& term) -> bool {
    auto right_m = [&]() {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (vec[coord(a, a, b)] != b) return false;
      return true;
    };
    auto left_m = [&]() {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (vec[coord(a, b, b)] != a) return false;
      return true;
    };
    auto right_d = [&]() {
      return eval_term(faq->fbar, term, {faq->xbar, faq->xbar, faq->ybar}) == faq->ybar;
    };
    auto left_d = [&]() {
      return eval_term(faq->fbar, term, {faq->xbar, faq->ybar, faq->ybar}) == faq->xbar;
    };
    switch (k) {
      case TermKind::right_maltsev: return right_m();
      case TermKind::left_maltsev: return left_m();
      case TermKind::maltsev: return right_m() && left_m();
      case TermKind::right_difference: return right_d();
      case TermKind::left_difference: return left_d();
      case TermKind::weak_difference: return right_d() && left_d();
      case TermKind::difference: return right_m() && left_d();
      case TermKind::taylor: return is_taylor_term(alg, term, 3).holds;
    }
    return false;
  };

  for (std::size_t e = 0; e < f3.elements.size(); ++e) {
    Term t = provenance_term(f3, static_cast<int>(e));
    if (!vector_has_kind(f3.elements[e], kind, t)) continue;
    res.outcome = "found";
    res.certificate = classify_impl(alg, t, faq ? &*faq : nullptr);
    res.note = "element " + std::to_string(e) + " of the ternary term closure, depth " +
               std::to_string(depth[e]);
    return res;
  }

  // A difference-kind search reaching this point has a usable free abelian
  // quotient (the budget case returned early), so completeness of the ternary
  // closure alone decides exactness.
  if (f3.complete) {
    res.outcome = "none";
    res.note = "exhausted all " + std::to_string(f3.elements.size()) +
               " ternary term operations";
  } else {
    res.outcome = "inconclusive";
    res.note = "inconclusive beyond depth " + std::to_string(max_depth) + " (" +
               std::to_string(f3.elements.size()) + " term operations enumerated)";
  }
  return res;
}

// ===== Taylor terms =====

TaylorReport is_taylor_term(const FiniteAlgebra& alg, const Term& t, int arity) {
  validate(alg);
  const int natural = std::max(1, t.max_variable() + 1);
  const int m = arity > 0 ? arity : natural;
  if (m < natural) throw argument_error("is_taylor_term: arity below the term's variables");
  if (m > 16) throw argument_error("is_taylor_term: arity too large");

  TaylorReport rep;
  rep.idempotence = check_identity(alg, subst_vars(t, std::vector<int>(m, 0)),
                                   Term::variable(0), 1);
  if (!rep.idempotence.holds) {
    rep.failure = "not idempotent";
    return rep;
  }

  // For each place, search pairs of {x,y}-patterns; restricting to two
  // variables loses nothing (substitute y for the i-th right-hand variable
  // and x for every other variable of any witnessing identity).
  for (int place = 0; place < m; ++place) {
    bool found = false;
    TaylorWitness wit;
    const int patterns = 1 << m;
    for (int wbits = 0; wbits < patterns && !found; ++wbits) {
      std::vector<int> w(m);
      for (int i = 0; i < m; ++i) w[i] = (wbits >> (m - 1 - i)) & 1;
      if (w[place] != 0) continue;
      for (int zbits = 0; zbits < patterns && !found; ++zbits) {
        std::vector<int> z(m);
        for (int i = 0; i < m; ++i) z[i] = (zbits >> (m - 1 - i)) & 1;
        if (z[place] != 1) continue;
        if (check_identity(alg, subst_vars(t, w), subst_vars(t, z), 2).holds) {
          wit.place = place;
          wit.w = w;
          wit.z = z;
          found = true;
        }
      }
    }
    if (!found) {
      rep.failure = "no identity at place " + std::to_string(place);
      rep.witnesses.clear();
      return rep;
    }
    rep.witnesses.push_back(std::move(wit));
  }
  rep.holds = true;
  return rep;
}

TaylorExistence has_taylor_term_idempotent(const FiniteAlgebra& alg, std::size_t budget) {
  validate(alg);
  for (const auto& op : alg.ops) {
    if (op.arity < 1)
      throw precondition_error("has_taylor_term_idempotent: nullary operation " + op.name);
    for (int a = 0; a < alg.size; ++a) {
      std::size_t idx = 0;
      for (int i = 0; i < op.arity; ++i)
        idx = idx * static_cast<std::size_t>(alg.size) + static_cast<std::size_t>(a);
      if (op.table[idx] != a)
        throw precondition_error("has_taylor_term_idempotent: operation " + op.name +
                                 " is not idempotent at " + std::to_string(a));
    }
  }
  if (alg.size > 20) throw budget_error("too many subsets to enumerate",
                                        std::size_t{1} << alg.size);
  (void)budget;

  TaylorExistence out;
  std::set<std::vector<int>> seen;
  for (unsigned mask = 1; mask < (1u << alg.size); ++mask) {
    // Close the subset under all operations (stays within the universe).
    std::vector<char> in(alg.size, 0);
    for (int a = 0; a < alg.size; ++a)
      if (mask & (1u << a)) in[a] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& op : alg.ops) {
        std::vector<int> members;
        for (int a = 0; a < alg.size; ++a)
          if (in[a]) members.push_back(a);
        const int s = static_cast<int>(members.size());
        std::vector<int> args(op.arity, 0);
        while (true) {
          std::size_t idx = 0;
          for (int i = 0; i < op.arity; ++i)
            idx = idx * static_cast<std::size_t>(alg.size) +
                  static_cast<std::size_t>(members[args[i]]);
          int v = op.table[idx];
          if (!in[v]) {
            in[v] = 1;
            grew = true;
          }
          int i = op.arity - 1;
          for (; i >= 0; --i) {
            if (++args[i] < s) break;
            args[i] = 0;
          }
          if (i < 0) break;
        }
      }
    }
    std::vector<int> sub;
    for (int a = 0; a < alg.size; ++a)
      if (in[a]) sub.push_back(a);
    if (sub.size() < 2 || !seen.insert(sub).second) continue;

    // Build the induced subalgebra on relabeled elements 0..|S|-1.
    const int s = static_cast<int>(sub.size());
    std::vector<int> rank(alg.size, -1);
    for (int i = 0; i < s; ++i) rank[sub[i]] = i;
    FiniteAlgebra subalg;
    subalg.name = alg.name + "|S";
    subalg.size = s;
    for (const auto& op : alg.ops) {
      OperationTable t;
      t.name = op.name;
      t.arity = op.arity;
      std::size_t rows = 1;
      for (int i = 0; i < op.arity; ++i) rows *= static_cast<std::size_t>(s);
      t.table.assign(rows, 0);
      std::vector<int> args(op.arity, 0);
      for (std::size_t row = 0; row < rows; ++row) {
        std::size_t rest = row;
        for (int i = op.arity - 1; i >= 0; --i) {
          args[i] = static_cast<int>(rest % static_cast<std::size_t>(s));
          rest /= static_cast<std::size_t>(s);
        }
        std::size_t idx = 0;
        for (int i = 0; i < op.arity; ++i)
          idx = idx * static_cast<std::size_t>(alg.size) +
                static_cast<std::size_t>(sub[args[i]]);
        t.table[row] = rank[op.table[idx]];
      }
      subalg.ops.push_back(std::move(t));
    }

    // Every 2-block congruence, in ascending binary order of the block mask
    // (element 0 pinned to block zero).
    for (unsigned bm = 1; bm < (1u << (s - 1)); ++bm) {
      std::vector<std::vector<int>> blocks(2);
      blocks[0].push_back(0);
      for (int i = 1; i < s; ++i) blocks[(bm >> (i - 1)) & 1].push_back(i);
      Partition theta = Partition::from_blocks(s, blocks);
      if (!is_congruence(subalg, theta)) continue;
      QuotientResult q = quotient(subalg, theta);
      bool all_proj = true;
      for (const auto& op : q.algebra.ops) {
        bool is_proj = false;
        for (int i = 0; i < op.arity && !is_proj; ++i) {
          bool match = true;
          std::vector<int> args(op.arity, 0);
          std::size_t rows = std::size_t{1} << op.arity;  // quotient size is 2
          for (std::size_t row = 0; row < rows && match; ++row) {
            std::size_t rest = row;
            for (int j = op.arity - 1; j >= 0; --j) {
              args[j] = static_cast<int>(rest % 2);
              rest /= 2;
            }
            std::size_t idx = 0;
            for (int j = 0; j < op.arity; ++j)
              idx = idx * 2 + static_cast<std::size_t>(args[j]);
            if (op.table[idx] != args[i]) match = false;
          }
          if (match) is_proj = true;
        }
        if (!is_proj) {
          all_proj = false;
          break;
        }
      }
      if (all_proj) {
        out.has_taylor = false;
        out.subuniverse = sub;
        out.two_block = theta;
        out.detail = "every operation is a projection on the 2-element quotient";
        return out;
      }
    }
  }
  out.has_taylor = true;
  out.detail = "no projection quotient among the 2-element quotients of subalgebras";
  return out;
}

}  // namespace ualg
