// herringbone.cpp
//
// The herringbone construction: alternating congruence sequences on
// D = b(alpha_bar) whose limits witness failure of right semidistributivity
// of the commutator, plus the end-to-end semidistributivity_failure driver.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "ualg/constructions.hpp"
#include "ualg/errors.hpp"

namespace ualg {

namespace {

bool all_passed(const std::vector<CheckedAssertion>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckedAssertion& c) { return c.passed; });
}

int odd_ceil(int k) { return k % 2 ? k : k + 1; }
int even_ceil(int k) { return k % 2 ? k + 1 : k; }

/// Generators of M(alpha,beta) as power-4 vectors, in the matrix_set order.
std::vector<std::vector<int>> matrix_generators(const Partition& alpha,
                                                const Partition& beta) {
  std::vector<std::vector<int>> gens;
  for (auto [a, b] : alpha.ordered_pairs()) gens.push_back({a, a, b, b});
  for (auto [u, v] : beta.ordered_pairs()) gens.push_back({u, v, u, v});
  return gens;
}

}  // namespace

// ===== HerringboneState =====

bool HerringboneState::ok() const { return all_passed(checks); }

// The clamped accessors are sound because the loop always runs one full round
// past the last change, so every sequence is constant at and beyond its last
// stored entry.

Partition HerringboneState::eta_at(int k) const {
  if (k < 0) throw argument_error("eta_at: negative index");
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(k), eta_seq.size() - 1);
  return eta_seq[i];
}

Partition HerringboneState::delta_at(int odd_k) const {
  if (odd_k < 1 || odd_k % 2 == 0) throw argument_error("delta_at: index must be odd");
  std::size_t n = static_cast<std::size_t>((odd_k - 1) / 2);
  return delta_seq[std::min(n, delta_seq.size() - 1)];
}

Partition HerringboneState::gamma_at(int even_k) const {
  if (even_k < 0 || even_k % 2 != 0)
    throw argument_error("gamma_at: index must be even");
  std::size_t n = static_cast<std::size_t>(even_k / 2);
  return gamma_seq[std::min(n, gamma_seq.size() - 1)];
}

// ===== herringbone =====

HerringboneState herringbone(const FiniteAlgebra& b, const Partition& theta_bar,
                             const Partition& alpha_bar) {
  const Partition zero = Partition::equality(b.size);
  if (!(leq(theta_bar, alpha_bar) && theta_bar != alpha_bar && theta_bar != zero))
    throw precondition_error("herringbone: requires 0 < theta_bar < alpha_bar");
  if (commutator(b, theta_bar, alpha_bar) != zero)
    throw precondition_error("herringbone: requires [theta_bar,alpha_bar] = 0");
  if (commutator(b, alpha_bar, theta_bar) != theta_bar)
    throw precondition_error("herringbone: requires [alpha_bar,theta_bar] = theta_bar");

  HerringboneState st;
  st.b = b;
  st.theta_bar = theta_bar;
  st.alpha_bar = alpha_bar;
  st.D = graph_algebra(b, alpha_bar);
  const GraphAlgebra& D = st.D;
  const int m = D.derived.size;

  st.eta = D.eta1;
  st.Delta = delta_congruence(D, theta_bar);
  Partition theta1 = lift_congruence(D, theta_bar, 1);
  Partition theta2 = lift_congruence(D, theta_bar, 2);
  st.Gamma = meet(theta1, D.eta2);

  // Alternate joins with the side congruences and meets with eta until a full
  // round leaves eta unchanged; monotone chains in a finite lattice, so this
  // terminates within |D| rounds.
  st.eta_seq = {Partition::equality(m)};
  st.gamma_seq = {st.Gamma};
  int last_change = 0;
  for (int n = 0;; ++n) {
    if (n > m + 2)
      throw verification_error("herringbone: sequences failed to stabilize");
    // step 2n+1
    Partition dnew = join(st.Delta, st.eta_seq[static_cast<std::size_t>(2 * n)]);
    Partition enew = meet(st.eta, dnew);
    bool changed = enew != st.eta_seq.back();
    if (!st.delta_seq.empty() && dnew != st.delta_seq.back()) changed = true;
    st.delta_seq.push_back(std::move(dnew));
    st.eta_seq.push_back(std::move(enew));
    if (changed) last_change = 2 * n + 1;
    // step 2n+2
    Partition gnew = join(st.Gamma, st.eta_seq.back());
    Partition enew2 = meet(st.eta, gnew);
    changed = enew2 != st.eta_seq.back() || gnew != st.gamma_seq.back();
    st.gamma_seq.push_back(std::move(gnew));
    st.eta_seq.push_back(std::move(enew2));
    if (changed) last_change = 2 * n + 2;
    // Stop once eta gained nothing over the whole round.
    const std::size_t K = st.eta_seq.size() - 1;
    if (st.eta_seq[K] == st.eta_seq[K - 2]) break;
  }
  st.stabilization_index = last_change;
  st.eta_inf = st.eta_seq.back();
  st.delta_inf = join(st.Delta, st.eta_inf);
  st.gamma_inf = join(st.Gamma, st.eta_inf);

  auto check = [&st](std::string label, bool passed, std::string detail = "") {
    st.checks.emplace_back(std::move(label), passed, std::move(detail));
  };

  const Partition dg = join(st.Delta, st.Gamma);
  const Partition eta_cap = meet(st.eta, dg);
  const int K = static_cast<int>(st.eta_seq.size()) - 1;

  // (1) the central chain climbs monotonically and stays below eta ^ (Delta v Gamma)
  {
    bool okc = true;
    std::string why;
    for (int k = 0; k + 1 <= K && okc; ++k)
      if (!leq(st.eta_seq[k], st.eta_seq[k + 1])) {
        okc = false;
        why = "eta^" + std::to_string(k) + " !<= eta^" + std::to_string(k + 1);
      }
    for (int k = 0; k <= K && okc; ++k)
      if (!leq(st.eta_seq[k], eta_cap)) {
        okc = false;
        why = "eta^" + std::to_string(k) + " !<= eta ^ (Delta v Gamma)";
      }
    check("order_1_eta_chain", okc, why);
  }

  // (2) both side chains climb monotonically and stay below Delta v Gamma
  {
    bool okc = true;
    std::string why;
    for (std::size_t i = 0; i + 1 < st.delta_seq.size() && okc; ++i)
      if (!leq(st.delta_seq[i], st.delta_seq[i + 1])) {
        okc = false;
        why = "Delta chain not monotone at " + std::to_string(2 * i + 1);
      }
    for (std::size_t i = 0; i + 1 < st.gamma_seq.size() && okc; ++i)
      if (!leq(st.gamma_seq[i], st.gamma_seq[i + 1])) {
        okc = false;
        why = "Gamma chain not monotone at " + std::to_string(2 * i);
      }
    for (std::size_t i = 0; i < st.delta_seq.size() && okc; ++i)
      if (!leq(st.delta_seq[i], dg)) {
        okc = false;
        why = "Delta^" + std::to_string(2 * i + 1) + " !<= Delta v Gamma";
      }
    for (std::size_t i = 0; i < st.gamma_seq.size() && okc; ++i)
      if (!leq(st.gamma_seq[i], dg)) {
        okc = false;
        why = "Gamma^" + std::to_string(2 * i) + " !<= Delta v Gamma";
      }
    check("order_2_side_chains", okc, why);
  }

  // (3) both side limits meet eta in exactly eta_inf
  check("order_3_limit_meets",
        meet(st.eta, st.delta_inf) == st.eta_inf &&
            meet(st.eta, st.gamma_inf) == st.eta_inf);

  // (4) the side limits join to Delta v Gamma, inside theta1 ^ theta2
  check("order_4_limit_join",
        join(st.delta_inf, st.gamma_inf) == dg && leq(dg, meet(theta1, theta2)));

  // (5) each local pentagon-shaped window is a sublattice
  {
    bool okc = true;
    std::string why;
    auto closed = [&](const std::vector<const Partition*>& S) {
      for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i; j < S.size(); ++j) {
          Partition mj = meet(*S[i], *S[j]);
          Partition jj = join(*S[i], *S[j]);
          bool mf = false, jf = false;
          for (const Partition* s : S) {
            if (*s == mj) mf = true;
            if (*s == jj) jf = true;
          }
          if (!mf || !jf) return false;
        }
      return true;
    };
    for (int mm = 0; 2 * mm + 3 <= K && mm + 1 < static_cast<int>(st.delta_seq.size()) && okc;
         ++mm) {
      std::vector<const Partition*> S{&st.eta_seq[2 * mm + 1], &st.eta_seq[2 * mm + 2],
                                      &st.eta_seq[2 * mm + 3], &st.delta_seq[mm],
                                      &st.delta_seq[mm + 1]};
      if (!closed(S)) {
        okc = false;
        why = "Delta window at m = " + std::to_string(mm);
      }
    }
    for (int nn = 0; 2 * nn + 2 <= K && nn + 1 < static_cast<int>(st.gamma_seq.size()) && okc;
         ++nn) {
      std::vector<const Partition*> S{&st.eta_seq[2 * nn], &st.eta_seq[2 * nn + 1],
                                      &st.eta_seq[2 * nn + 2], &st.gamma_seq[nn],
                                      &st.gamma_seq[nn + 1]};
      if (!closed(S)) {
        okc = false;
        why = "Gamma window at n = " + std::to_string(nn);
      }
    }
    check("order_5_sublattice_closure", okc, why);
  }

  // (6) closed forms for meets and joins across the chains, exercised a bit
  // past the computed range to cover the stabilized tail
  {
    bool okc = true;
    std::string why;
    auto fail = [&](const std::string& w) {
      if (okc) {
        okc = false;
        why = w;
      }
    };
    const int hi = K + 2;
    for (int j = 0; j <= hi && okc; ++j) {
      Partition ej = st.eta_at(j);
      for (int o = 1; o <= hi && okc; o += 2) {
        Partition dl = st.delta_at(o);
        if (meet(ej, dl) != st.eta_at(std::min(j, o)))
          fail("eta^" + std::to_string(j) + " ^ Delta^" + std::to_string(o));
        if (join(ej, dl) != st.delta_at(odd_ceil(std::max(j, o))))
          fail("eta^" + std::to_string(j) + " v Delta^" + std::to_string(o));
      }
      for (int e = 0; e <= hi && okc; e += 2) {
        Partition gl = st.gamma_at(e);
        if (meet(ej, gl) != st.eta_at(std::min(j, e)))
          fail("eta^" + std::to_string(j) + " ^ Gamma^" + std::to_string(e));
        if (join(ej, gl) != st.gamma_at(even_ceil(std::max(j, e))))
          fail("eta^" + std::to_string(j) + " v Gamma^" + std::to_string(e));
      }
      if (okc && meet(ej, st.delta_inf) != ej) fail("eta^j ^ Delta_inf");
      if (okc && join(ej, st.delta_inf) != st.delta_inf) fail("eta^j v Delta_inf");
      if (okc && meet(ej, st.gamma_inf) != ej) fail("eta^j ^ Gamma_inf");
      if (okc && join(ej, st.gamma_inf) != st.gamma_inf) fail("eta^j v Gamma_inf");
    }
    for (int o = 1; o <= hi && okc; o += 2)
      if (meet(st.eta, st.delta_at(o)) != st.eta_at(o))
        fail("eta ^ Delta^" + std::to_string(o));
    for (int e = 0; e <= hi && okc; e += 2)
      if (meet(st.eta, st.gamma_at(e)) != st.eta_at(e))
        fail("eta ^ Gamma^" + std::to_string(e));
    check("order_6_closed_forms", okc, why);
  }

  return st;
}

// ===== semidistributivity failure =====

bool SdFailureReport::ok() const { return all_passed(checks); }

std::optional<SdFailureReport> semidistributivity_failure(const FiniteAlgebra& alg,
                                                          std::size_t lattice_budget,
                                                          std::size_t closure_budget) {
  auto pr = abelian_pentagon_pipeline(alg, lattice_budget, closure_budget);
  if (!pr) return std::nullopt;

  SdFailureReport rep;
  rep.pipeline = *pr;
  const FiniteAlgebra& B = rep.pipeline.derived_algebra;
  const Partition alpha = rep.pipeline.derived("alpha");
  const Partition delta = rep.pipeline.derived("delta");
  const Partition theta = rep.pipeline.derived("theta");

  auto check = [&rep](std::string label, bool passed, std::string detail = "") {
    rep.checks.emplace_back(std::move(label), passed, std::move(detail));
  };

  // Collapse delta: on b the critical interval becomes I[0, theta_bar].
  QuotientResult Qb = quotient(B, delta);
  rep.b = Qb.algebra;
  Partition theta_bar = quotient_partition(theta, delta);
  Partition alpha_bar = quotient_partition(alpha, delta);

  rep.state = herringbone(rep.b, theta_bar, alpha_bar);
  const HerringboneState& st = rep.state;
  const GraphAlgebra& D = st.D;

  // Base witness: the least matrix violating C(alpha_bar,theta_bar;0) on b.
  CentralityWitness w;
  const Partition zero_b = Partition::equality(rep.b.size);
  bool cent = centralizes(rep.b, alpha_bar, theta_bar, zero_b, &w, closure_budget);
  check("alpha_theta_not_centralized", !cent);
  if (cent) return rep;
  rep.base_witness = w.quad;
  const int p = w.quad[0], q = w.quad[1], r = w.quad[2], s = w.quad[3];
  check("base_witness_rows", p == q && r != s,
        "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) +
            "," + std::to_string(s) + ")");

  // Lift it to the matrix ((r,p),(r,q),(r,r),(r,s)) over D.
  rep.matrix = {D.index_of(r, p), D.index_of(r, q), D.index_of(r, r), D.index_of(r, s)};
  bool in_D = rep.matrix[0] >= 0 && rep.matrix[1] >= 0 && rep.matrix[2] >= 0 &&
              rep.matrix[3] >= 0;
  check("matrix_elements_in_D", in_D);
  if (!in_D) return rep;

  const Partition dg = join(st.Delta, st.Gamma);
  check("matrix_in_matrix_set",
        closure_contains(D.derived, 4, matrix_generators(st.eta, dg),
                         {rep.matrix[0], rep.matrix[1], rep.matrix[2], rep.matrix[3]},
                         closure_budget),
        "matrix of M(eta, Delta v Gamma)");
  check("matrix_first_row_constant", rep.matrix[0] == rep.matrix[1]);
  check("matrix_second_row_nonconstant", rep.matrix[2] != rep.matrix[3]);

  // U: the theta1 ^ theta2 class of (r,r) is the square V x V of the
  // theta_bar-class V of r, and it contains (r,s).
  Partition theta1 = lift_congruence(D, theta_bar, 1);
  Partition theta2 = lift_congruence(D, theta_bar, 2);
  Partition box = meet(theta1, theta2);
  for (int d = 0; d < D.derived.size; ++d)
    if (box.related(d, rep.matrix[2])) rep.U.push_back(d);
  {
    std::vector<int> square;
    for (int u = 0; u < rep.b.size; ++u) {
      if (!theta_bar.related(u, r)) continue;
      for (int v = 0; v < rep.b.size; ++v) {
        if (!theta_bar.related(v, r)) continue;
        int d = D.index_of(u, v);
        if (d >= 0) square.push_back(d);
      }
    }
    std::sort(square.begin(), square.end());
    check("witness_class_is_square", square == rep.U,
          "|U| = " + std::to_string(rep.U.size()));
  }
  check("square_contains_witness",
        std::binary_search(rep.U.begin(), rep.U.end(), rep.matrix[3]));

  // U is a union of classes of every sequence congruence, limits included.
  {
    bool okc = true;
    std::string why;
    std::set<int> in_u(rep.U.begin(), rep.U.end());
    std::vector<std::pair<std::string, const Partition*>> all;
    for (std::size_t k = 0; k < st.eta_seq.size(); ++k)
      all.push_back({"eta^" + std::to_string(k), &st.eta_seq[k]});
    for (std::size_t n = 0; n < st.delta_seq.size(); ++n)
      all.push_back({"Delta^" + std::to_string(2 * n + 1), &st.delta_seq[n]});
    for (std::size_t n = 0; n < st.gamma_seq.size(); ++n)
      all.push_back({"Gamma^" + std::to_string(2 * n), &st.gamma_seq[n]});
    all.push_back({"eta_inf", &st.eta_inf});
    all.push_back({"Delta_inf", &st.delta_inf});
    all.push_back({"Gamma_inf", &st.gamma_inf});
    for (const auto& [name, part] : all) {
      for (int d : rep.U) {
        for (int e = 0; e < D.derived.size; ++e)
          if (part->related(d, e) && !in_u.count(e)) {
            okc = false;
            why = name + " leaves U at (" + std::to_string(d) + "," +
                  std::to_string(e) + ")";
            break;
          }
        if (!okc) break;
      }
      if (!okc) break;
    }
    check("witness_square_closed", okc, why);
  }

  // The central chain is trivial on U, so the lifted witness pair survives
  // into D / eta_inf.
  {
    bool t1 = true, tinf = true;
    const Partition& eta1p = st.eta_seq.size() > 1 ? st.eta_seq[1] : st.eta_seq[0];
    for (std::size_t i = 0; i < rep.U.size() && (t1 || tinf); ++i)
      for (std::size_t j = i + 1; j < rep.U.size(); ++j) {
        if (eta1p.related(rep.U[i], rep.U[j])) t1 = false;
        if (st.eta_inf.related(rep.U[i], rep.U[j])) tinf = false;
      }
    check("eta1_trivial_on_square", t1);
    check("eta_inf_trivial_on_square", tinf);
  }
  check("witness_pair_separated", !st.eta_inf.related(rep.matrix[2], rep.matrix[3]));

  // Hence the matrix itself violates C(eta, Delta v Gamma; eta_inf): its first
  // row is eta_inf-related (equal) while its second row is not.
  check("eta_join_not_centralized",
        st.eta_inf.related(rep.matrix[0], rep.matrix[1]) &&
            !st.eta_inf.related(rep.matrix[2], rep.matrix[3]));
  {
    CentralityWitness wd;
    bool cd = centralizes_delta(D.derived, st.eta, dg, st.eta_inf, &wd);
    check("eta_join_not_centralized_crosscheck", !cd);
  }

  // Quotient to E = D / eta_inf and read off the commutator failure.
  QuotientResult Qe = quotient(D.derived, st.eta_inf);
  rep.E = Qe.algebra;
  rep.block_of = Qe.block_of;
  rep.x = quotient_partition(st.eta, st.eta_inf);
  rep.y = quotient_partition(st.delta_inf, st.eta_inf);
  rep.z = quotient_partition(st.gamma_inf, st.eta_inf);
  const Partition zero_e = Partition::equality(rep.E.size);
  check("xy_commutator_zero", commutator(rep.E, rep.x, rep.y, closure_budget) == zero_e);
  check("xz_commutator_zero", commutator(rep.E, rep.x, rep.z, closure_budget) == zero_e);
  check("x_join_commutator_nonzero",
        commutator(rep.E, rep.x, join(rep.y, rep.z), closure_budget) != zero_e);

  return rep;
}

}  // namespace ualg
