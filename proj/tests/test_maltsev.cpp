// test_maltsev.cpp
//
// Free algebras with term provenance, the free abelian quotient, term
// classification/search, and Taylor-term checks.
//
// Frozen expectations: the free-algebra sizes (16, 64, 8, 26 below) were
// computed by tools/oracle.py, which closes generator vectors under the
// operation tables with a plain worklist — independent of the library's
// subpower closure.

#include <string>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "ualg/algebra.hpp"
#include "ualg/centrality.hpp"
#include "ualg/congruence.hpp"
#include "ualg/errors.hpp"
#include "ualg/maltsev.hpp"
#include "ualg/partition.hpp"

using namespace ualg;
using ualg::testing::z2s2;
using ualg::testing::z4;

namespace {

// x + 3y + z on the cyclic group: the classic Maltsev term.
Term z4_maltsev_term() {
  return parse_term(z4(), "(add (add x (add (add y y) y)) z)");
}

Term z2s2_taylor_term() { return parse_term(z2s2(), "(mul x (mul y z))"); }

}  // namespace

TEST_CASE("free algebra sizes match the oracle") {
  CHECK(free_algebra(z4(), 2).elements.elements.size() == 16);
  CHECK(free_algebra(z4(), 3).elements.elements.size() == 64);
  CHECK(free_algebra(z2s2(), 2).elements.elements.size() == 8);
  CHECK(free_algebra(z2s2(), 3).elements.elements.size() == 26);
}

TEST_CASE("free algebra structure and provenance") {
  const FreeAlgebra F = free_algebra(z2s2(), 2);
  const int n = F.base.size;
  REQUIRE(F.rank == 2);
  REQUIRE(F.coordinates.size() == 16);

  // Assignment tuples are lexicographic with the first variable most
  // significant.
  for (int c = 0; c < 16; ++c) {
    CHECK(F.coordinates[c][0] == c / n);
    CHECK(F.coordinates[c][1] == c % n);
  }

  // The generators are the projection vectors, in variable order.
  REQUIRE(F.generator_elements.size() == 2);
  for (int i = 0; i < 2; ++i) {
    const auto& vec = F.elements.elements[F.generator_elements[i]];
    for (int c = 0; c < 16; ++c) CHECK(vec[c] == F.coordinates[c][i]);
  }

  // Provenance: evaluating term_of(e) on every assignment reproduces the
  // stored vector, for every element.
  for (std::size_t e = 0; e < F.elements.elements.size(); ++e) {
    const Term t = F.term_of(static_cast<int>(e));
    CHECK(t.max_variable() < 2);
    for (int c = 0; c < 16; ++c)
      CHECK(eval_term(F.base, t, F.coordinates[c]) == F.elements.elements[e][c]);
  }

  // The materialized algebra is well formed and has the base signature.
  CHECK_NOTHROW(validate(F.algebra));
  CHECK(F.algebra.size == static_cast<int>(F.elements.elements.size()));
  REQUIRE(F.algebra.ops.size() == F.base.ops.size());
  CHECK(F.algebra.ops[0].name == "mul");
  CHECK(F.algebra.ops[0].arity == 2);
}

TEST_CASE("free algebra budget and argument errors") {
  CHECK_THROWS_AS(free_algebra(z4(), 3, 10), budget_error);
  CHECK_THROWS_AS(free_algebra(z4(), 0), argument_error);
}

TEST_CASE("free abelian quotient of the cyclic group") {
  const FreeAbelianQuotient q = free_abelian_quotient(z4());
  CHECK(q.free2.elements.elements.size() == 16);
  // The group is abelian, so nothing collapses.
  CHECK(q.theta_comm == Partition::equality(16));
  CHECK(q.fbar.size == 16);
  CHECK(q.xbar != q.ybar);
  CHECK(q.theta == cg(q.free2.algebra, q.free2.generator_elements[0],
                      q.free2.generator_elements[1]));
  CHECK(commutator(q.fbar, q.theta_bar, q.theta_bar) ==
        Partition::equality(q.fbar.size));
}

TEST_CASE("free abelian quotient of the fixture") {
  const FreeAbelianQuotient q = free_abelian_quotient(z2s2());
  CHECK(q.free2.elements.elements.size() == 8);
  CHECK(q.theta_comm ==
        commutator(q.free2.algebra, q.theta, q.theta));
  CHECK(q.fbar.size == static_cast<int>(q.theta_comm.blocks().size()));
  CHECK(q.block_of.size() == 8);
  CHECK(commutator(q.fbar, q.theta_bar, q.theta_bar) ==
        Partition::equality(q.fbar.size));
}

TEST_CASE("term kind names round trip") {
  const std::vector<std::pair<TermKind, std::string>> table = {
      {TermKind::right_maltsev, "right-maltsev"},
      {TermKind::left_maltsev, "left-maltsev"},
      {TermKind::maltsev, "maltsev"},
      {TermKind::right_difference, "right-difference"},
      {TermKind::left_difference, "left-difference"},
      {TermKind::weak_difference, "weak-difference"},
      {TermKind::difference, "difference"},
      {TermKind::taylor, "taylor"},
  };
  for (const auto& [kind, name] : table) {
    CHECK(term_kind_name(kind) == name);
    REQUIRE(parse_term_kind(name).has_value());
    CHECK(*parse_term_kind(name) == kind);
  }
  CHECK(!parse_term_kind("bogus").has_value());
  CHECK(!parse_term_kind("Maltsev").has_value());
}

TEST_CASE("classifying the cyclic group's Maltsev term") {
  const FiniteAlgebra g = z4();
  const TermCertificate cert = classify_term(g, z4_maltsev_term());
  for (TermKind k :
       {TermKind::right_maltsev, TermKind::left_maltsev, TermKind::maltsev,
        TermKind::right_difference, TermKind::left_difference,
        TermKind::weak_difference, TermKind::difference, TermKind::taylor})
    CHECK_MESSAGE(cert.has_kind(k), term_kind_name(k));
  CHECK(!cert.evidence.empty());

  // Both Maltsev identities, re-evaluated from scratch.
  const Term t = z4_maltsev_term();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(eval_term(g, t, {a, a, b}) == b);
      CHECK(eval_term(g, t, {a, b, b}) == a);
    }
}

TEST_CASE("classifying the fixture's Taylor term") {
  const TermCertificate cert = classify_term(z2s2(), z2s2_taylor_term());
  CHECK(cert.has_kind(TermKind::taylor));
  CHECK(!cert.has_kind(TermKind::right_maltsev));
  CHECK(!cert.has_kind(TermKind::left_maltsev));
  CHECK(!cert.has_kind(TermKind::maltsev));
}

TEST_CASE("term search on the cyclic group") {
  const FiniteAlgebra g = z4();
  const TermSearchResult res = find_term(g, TermKind::maltsev);
  REQUIRE(res.outcome == "found");
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->has_kind(TermKind::maltsev));
  CHECK(!res.note.empty());
  const Term& t = res.certificate->term;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(eval_term(g, t, {a, a, b}) == b);
      CHECK(eval_term(g, t, {a, b, b}) == a);
    }
}

TEST_CASE("the fixture has a weak difference term but no difference term") {
  const FiniteAlgebra a = z2s2();

  const TermSearchResult weak = find_term(a, TermKind::weak_difference);
  REQUIRE(weak.outcome == "found");
  REQUIRE(weak.certificate.has_value());
  CHECK(weak.certificate->has_kind(TermKind::weak_difference));

  // Consequence check: on any member of the variety — here the fixture
  // itself — a weak difference term inverts every pair of an abelian
  // congruence.  The abelian congruences of the fixture are 0, delta, theta.
  const Term& t = weak.certificate->term;
  for (const char* text : {"0|1|2|3", "0,2|1|3", "0,2|1,3"}) {
    const Partition th = parse_partition(text, 4);
    REQUIRE(centralizes(a, th, th, Partition::equality(4)));
    for (auto [u, v] : th.ordered_pairs()) {
      CHECK(eval_term(a, t, {u, u, v}) == v);
      CHECK(eval_term(a, t, {u, v, v}) == u);
    }
  }

  // Exact negatives: all 26 ternary term operations were enumerated.
  const TermSearchResult diff = find_term(a, TermKind::difference);
  CHECK(diff.outcome == "none");
  CHECK(diff.note.find("26") != std::string::npos);
  const TermSearchResult mal = find_term(a, TermKind::maltsev);
  CHECK(mal.outcome == "none");
}

TEST_CASE("term search reports inconclusive under tiny budgets") {
  const TermSearchResult mal = find_term(z2s2(), TermKind::maltsev, 5);
  CHECK(mal.outcome == "inconclusive");
  CHECK(!mal.note.empty());

  // Difference kinds additionally need the free abelian quotient.
  const TermSearchResult wd = find_term(z2s2(), TermKind::weak_difference, 5);
  CHECK(wd.outcome == "inconclusive");
  CHECK(wd.note.find("free abelian quotient") != std::string::npos);
}

TEST_CASE("Taylor term check on the fixture") {
  const FiniteAlgebra a = z2s2();
  const Term t = z2s2_taylor_term();
  const TaylorReport rep = is_taylor_term(a, t);
  CHECK(rep.holds);
  CHECK(rep.idempotence.holds);
  REQUIRE(rep.witnesses.size() == 3);

  // Each witness identity is re-verified by brute evaluation over all pairs.
  for (int place = 0; place < 3; ++place) {
    const TaylorWitness& w = rep.witnesses[place];
    CHECK(w.place == place);
    REQUIRE(w.w.size() == 3);
    REQUIRE(w.z.size() == 3);
    CHECK(w.w[place] == 0);
    CHECK(w.z[place] == 1);
    for (int x = 0; x < a.size; ++x)
      for (int y = 0; y < a.size; ++y) {
        std::vector<int> lhs(3), rhs(3);
        for (int i = 0; i < 3; ++i) {
          lhs[i] = w.w[i] == 0 ? x : y;
          rhs[i] = w.z[i] == 0 ? x : y;
        }
        CHECK(eval_term(a, t, lhs) == eval_term(a, t, rhs));
      }
  }
}

TEST_CASE("Taylor term check rejects non-idempotent terms") {
  const FiniteAlgebra g = z4();
  const Term t = parse_term(g, "(add x y)");
  const TaylorReport rep = is_taylor_term(g, t);
  CHECK(!rep.holds);
  CHECK(!rep.idempotence.holds);
  CHECK(rep.idempotence.counterexample == std::vector<int>{1});  // 1+1 = 2
  CHECK(rep.failure == "not idempotent");
  CHECK(rep.witnesses.empty());

  CHECK_THROWS_AS(is_taylor_term(g, t, 1), argument_error);   // below max variable
  CHECK_THROWS_AS(is_taylor_term(g, t, 17), argument_error);  // too large
}

TEST_CASE("Taylor existence for idempotent algebras") {
  // The fixtures are not idempotent.
  CHECK_THROWS_AS(has_taylor_term_idempotent(z2s2()), precondition_error);
  CHECK_THROWS_AS(has_taylor_term_idempotent(z4()), precondition_error);

  // The 2-element meet semilattice has a Taylor term (the meet itself).
  const FiniteAlgebra sl{"S2", 2, {{"mul", 2, {0, 0, 0, 1}}}};
  const TaylorExistence yes = has_taylor_term_idempotent(sl);
  CHECK(yes.has_taylor);

  // The left-projection groupoid has none; the witness is the algebra itself
  // with the discrete 2-block congruence.
  const FiniteAlgebra proj{"P2", 2, {{"f", 2, {0, 0, 1, 1}}}};
  const TaylorExistence no = has_taylor_term_idempotent(proj);
  CHECK(!no.has_taylor);
  CHECK(no.subuniverse == std::vector<int>{0, 1});
  CHECK(no.two_block == Partition::equality(2));
  // f really is the first projection on the witness quotient.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(eval_op(proj, 0, {x, y}) == x);
}
