// constructions.cpp
//
// Better pentagons, noncommutativity normalization, distributivity gadgets,
// and the abelian-pentagon pipeline.

#include "ualg/constructions.hpp"

#include <algorithm>
#include <sstream>

#include "ualg/errors.hpp"
#include "ualg/union_find.hpp"

namespace ualg {

namespace {

bool all_passed(const std::vector<CheckedAssertion>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckedAssertion& c) { return c.passed; });
}

std::string quad_text(const std::array<int, 4>& q) {
  std::ostringstream os;
  os << "(" << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << ")";
  return os.str();
}

}  // namespace

bool PentagonReport::ok() const { return all_passed(checks); }

const Partition& PentagonReport::derived(const std::string& label) const {
  for (const auto& nc : derived_labels)
    if (nc.label == label) return nc.value;
  throw argument_error("PentagonReport: no derived congruence labeled " + label);
}

bool NormalizedPair::ok() const { return all_passed(checks); }
bool DistributivityGadget::ok() const { return all_passed(checks); }

PentagonLabels resolve_pentagon(const CongruenceLattice& L, const Pentagon& P) {
  auto at = [&](int i) -> const Partition& {
    if (i < 0 || i >= L.size()) throw argument_error("pentagon index out of range");
    return L.congruences[i];
  };
  return PentagonLabels{at(P.bottom), at(P.beta), at(P.delta), at(P.theta), at(P.top)};
}

namespace {

/// Validate the pentagon equations on explicit partitions.
void require_pentagon(const PentagonLabels& P) {
  bool ok = leq(P.delta, P.theta) && P.delta != P.theta &&
            meet(P.beta, P.theta) == P.bottom && meet(P.beta, P.delta) == P.bottom &&
            join(P.beta, P.delta) == P.top && join(P.beta, P.theta) == P.top;
  std::vector<const Partition*> five{&P.bottom, &P.beta, &P.delta, &P.theta, &P.top};
  for (std::size_t i = 0; ok && i < five.size(); ++i)
    for (std::size_t j = i + 1; ok && j < five.size(); ++j)
      if (*five[i] == *five[j]) ok = false;
  if (!ok) throw argument_error("the five labels do not form a pentagon");
}

/// Project a congruence of A(beta) to the base along the first coordinate:
/// x ~ z iff some ((x,y),(z,w)) is related.
Partition project_first(const GraphAlgebra& G, const Partition& p) {
  UnionFind uf(G.base.size);
  const int m = static_cast<int>(G.pairs.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (p.related(i, j)) uf.unite(G.pairs[i].first, G.pairs[j].first);
  for (int i = 0; i < G.base.size; ++i) uf.find(i);
  return Partition::from_parent_map(uf.parent);
}

}  // namespace

// ===== better pentagons =====

PentagonReport better_pentagon(const FiniteAlgebra& alg, const PentagonLabels& P) {
  require_pentagon(P);
  if (!centralizes(alg, P.theta, P.theta, P.delta))
    throw precondition_error("better_pentagon: C(theta,theta;delta) fails");
  if (centralizes(alg, P.beta, P.theta, P.delta))
    throw precondition_error("better_pentagon: C(beta,theta;delta) holds");

  PentagonReport rep;
  rep.input_labels = {{"bottom", P.bottom}, {"beta", P.beta},   {"delta", P.delta},
                      {"theta", P.theta},   {"top", P.top}};

  GraphAlgebra G = graph_algebra(alg, P.beta);
  Partition delta1 = lift_congruence(G, P.delta, 1);
  Partition delta2 = lift_congruence(G, P.delta, 2);
  Partition Delta = delta_congruence(G, P.theta);  // Delta_{beta,theta}
  Partition gamma1 = join(delta1, meet(delta2, Delta));
  Partition psi = join(meet(delta1, Delta), meet(delta2, Delta));
  Partition bot = meet(delta1, Delta);

  // Recover the base congruence gamma with lift(gamma,1) = gamma1.
  Partition gamma = project_first(G, gamma1);
  auto check = [&rep](std::string label, bool passed, std::string detail = "") {
    rep.checks.emplace_back(std::move(label), passed, std::move(detail));
  };
  {
    std::string why;
    check("gamma_is_congruence", is_congruence(alg, gamma, &why), why);
  }
  check("gamma_lifts_to_gamma1", lift_congruence(G, gamma, 1) == gamma1);
  check("gamma_between",
        leq(P.delta, gamma) && gamma != P.delta && leq(gamma, P.theta),
        "delta < gamma <= theta");

  Partition DeltaGamma = delta_congruence(G, gamma);  // Delta_{beta,gamma}
  Partition omega = join(DeltaGamma, psi);

  rep.derived_labels = {{"delta1", delta1},
                        {"delta2", delta2},
                        {"Delta", Delta},
                        {"gamma1", gamma1},
                        {"psi", psi},
                        {"omega", omega},
                        {"bot", bot},
                        {"gamma", gamma},
                        {"Delta_gamma", DeltaGamma}};

  // Shape of the derived pentagon inside Con(A(beta)).
  check("chain_strict", leq(bot, delta1) && bot != delta1 && leq(delta1, gamma1) &&
                            delta1 != gamma1,
        "bot < delta1 < gamma1");
  check("psi_lt_omega", leq(psi, omega) && psi != omega, "Psi < Omega strictly");
  check("omega_le_gamma1", leq(omega, gamma1));
  check("delta1_join_psi", join(delta1, psi) == gamma1);
  check("delta1_join_omega", join(delta1, omega) == gamma1);
  check("delta1_meet_psi", meet(delta1, psi) == bot);
  check("delta1_meet_omega", meet(delta1, omega) == bot);
  {
    std::vector<const Partition*> five{&bot, &delta1, &psi, &omega, &gamma1};
    bool distinct = true;
    for (std::size_t i = 0; i < five.size(); ++i)
      for (std::size_t j = i + 1; j < five.size(); ++j)
        if (*five[i] == *five[j]) distinct = false;
    check("five_distinct", distinct);
  }

  // Centralities on A(beta): the top interval I[delta1,gamma1] is abelian, and
  // Omega is abelian over the bottom of the new pentagon.
  check("gamma1_abelian_over_delta1", centralizes(G.derived, gamma1, gamma1, delta1));
  check("omega_abelian_over_bot", centralizes(G.derived, omega, omega, bot));

  // Quotient to B = A(beta)/bot and relabel.
  QuotientResult Q = quotient(G.derived, bot);
  rep.derived_algebra = Q.algebra;
  Partition alpha_p = quotient_partition(gamma1, bot);
  Partition beta_p = quotient_partition(delta1, bot);
  Partition delta_p = quotient_partition(psi, bot);
  Partition theta_p = quotient_partition(omega, bot);
  rep.derived_labels.push_back({"alpha'", alpha_p});
  rep.derived_labels.push_back({"beta'", beta_p});
  rep.derived_labels.push_back({"delta'", delta_p});
  rep.derived_labels.push_back({"theta'", theta_p});

  // The relabeled five form a pentagon in Con(B) with bottom = 0, top = alpha'.
  const Partition zero = Partition::equality(Q.algebra.size);
  check("output_pentagon",
        leq(delta_p, theta_p) && delta_p != theta_p &&
            meet(beta_p, theta_p) == zero && meet(beta_p, delta_p) == zero &&
            join(beta_p, delta_p) == alpha_p && join(beta_p, theta_p) == alpha_p &&
            beta_p != zero && delta_p != zero && theta_p != alpha_p);
  check("output_alpha_abelian_over_beta",
        centralizes(Q.algebra, alpha_p, alpha_p, beta_p), "C(alpha',alpha';beta')");
  check("output_theta_abelian", centralizes(Q.algebra, theta_p, theta_p, zero),
        "C(theta',theta';0)");

  rep.provenance = "better_pentagon on " + alg.name;
  return rep;
}

// ===== noncommutativity normalization =====

NormalizedPair normalize_noncommutativity(const FiniteAlgebra& alg, const Partition& gamma,
                                          const Partition& delta) {
  Partition gd = commutator(alg, gamma, delta);
  Partition dg = commutator(alg, delta, gamma);
  if (leq(gd, dg))
    throw precondition_error(
        "normalize_noncommutativity: [gamma,delta] <= [delta,gamma] already");

  NormalizedPair out;
  out.eps = dg;
  QuotientResult Q = quotient(alg, dg);
  out.algebra = Q.algebra;
  out.block_of = Q.block_of;
  out.alpha = quotient_partition(join(gamma, dg), dg);
  out.beta = quotient_partition(join(delta, dg), dg);

  const Partition zero = Partition::equality(out.algebra.size);
  Partition ba = commutator(out.algebra, out.beta, out.alpha);
  Partition ab = commutator(out.algebra, out.alpha, out.beta);
  out.checks.emplace_back("beta_alpha_commutator_zero", ba == zero, to_text(ba));
  out.checks.emplace_back("alpha_beta_commutator_nonzero", ab != zero, to_text(ab));
  return out;
}

// ===== distributivity gadgets =====

DistributivityGadget left_distributivity_gadget(const FiniteAlgebra& alg,
                                                const Partition& alpha,
                                                const Partition& beta) {
  Partition ba = commutator(alg, beta, alpha);
  Partition ab = commutator(alg, alpha, beta);
  const Partition zero = Partition::equality(alg.size);
  if (!(ba == zero && ab != zero))
    throw precondition_error(
        "left_distributivity_gadget: requires [beta,alpha] = 0 < [alpha,beta]");

  DistributivityGadget out;
  out.graph = graph_algebra(alg, alpha);
  const auto& G = out.graph;
  Partition Delta = delta_congruence(G, beta);
  Partition c1 = commutator(G.derived, G.eta1, Delta);
  Partition c2 = commutator(G.derived, G.eta2, Delta);
  Partition sum = join(c1, c2);                                  // [eta1,D] v [eta2,D]
  Partition joined = commutator(G.derived, join(G.eta1, G.eta2), Delta);  // [eta1 v eta2, D]
  out.labels = {{"Delta", Delta},
                {"[eta1,Delta]", c1},
                {"[eta2,Delta]", c2},
                {"[eta1,Delta]v[eta2,Delta]", sum},
                {"[eta1 v eta2,Delta]", joined}};

  const int m = static_cast<int>(G.pairs.size());
  // Diagonal elements must sit in singleton `sum`-classes...
  bool diag_singleton = true;
  std::string why;
  for (int i = 0; i < m && diag_singleton; ++i) {
    if (G.pairs[i].first != G.pairs[i].second) continue;
    for (int j = 0; j < m; ++j)
      if (j != i && sum.related(i, j)) {
        diag_singleton = false;
        why = "diagonal element " + std::to_string(i) + " related to " + std::to_string(j);
        break;
      }
  }
  out.checks.emplace_back("diagonal_singleton_under_commutator_join", diag_singleton, why);

  // ...but some two distinct diagonal elements are related by `joined`.
  for (int i = 0; i < m && out.witness_diagonal.first < 0; ++i) {
    if (G.pairs[i].first != G.pairs[i].second) continue;
    for (int j = i + 1; j < m; ++j) {
      if (G.pairs[j].first != G.pairs[j].second) continue;
      if (joined.related(i, j)) {
        out.witness_diagonal = {i, j};
        break;
      }
    }
  }
  out.checks.emplace_back("diagonal_collapsed_under_joined_commutator",
                          out.witness_diagonal.first >= 0,
                          out.witness_diagonal.first >= 0
                              ? "diagonal pair (" + std::to_string(out.witness_diagonal.first) +
                                    "," + std::to_string(out.witness_diagonal.second) + ")"
                              : "no related diagonal pair found");
  out.checks.emplace_back("left_distributivity_fails", joined != sum,
                          "[eta1 v eta2,Delta] != [eta1,Delta] v [eta2,Delta]");
  return out;
}

DistributivityGadget right_distributivity_gadget(const FiniteAlgebra& alg,
                                                 const Partition& alpha,
                                                 const Partition& beta) {
  if (!leq(beta, alpha))
    throw precondition_error("right_distributivity_gadget: requires beta <= alpha");
  Partition ba = commutator(alg, beta, alpha);
  Partition ab = commutator(alg, alpha, beta);
  const Partition zero = Partition::equality(alg.size);
  if (!(ba == zero && ab != zero))
    throw precondition_error(
        "right_distributivity_gadget: requires [beta,alpha] = 0 < [alpha,beta]");

  DistributivityGadget out;
  out.graph = graph_algebra(alg, alpha);
  const auto& G = out.graph;
  Partition Delta = delta_congruence(G, beta);
  Partition beta2 = lift_congruence(G, beta, 2);
  out.checks.emplace_back("eta2_join_Delta_is_beta2", join(G.eta2, Delta) == beta2);

  // Witness matrix from the least violating quadruple of C(alpha,beta;0).
  CentralityWitness w;
  bool cab = centralizes(alg, alpha, beta, zero, &w);
  out.checks.emplace_back("alpha_beta_not_centralized_at_zero", !cab,
                          !cab ? quad_text(w.quad) : "C(alpha,beta;0) holds");
  if (!cab) {
    int p = w.quad[0], q = w.quad[1], r = w.quad[2], s = w.quad[3];
    out.witness_matrix = {G.index_of(r, p), G.index_of(r, q), G.index_of(r, r),
                          G.index_of(r, s)};
    bool in_set = out.witness_matrix[0] >= 0 && out.witness_matrix[1] >= 0 &&
                  out.witness_matrix[2] >= 0 && out.witness_matrix[3] >= 0;
    if (in_set) {
      MatrixSet M = matrix_set(G.derived, G.eta1, beta2);
      in_set = M.contains(out.witness_matrix);
    }
    out.checks.emplace_back("witness_is_eta1_beta2_matrix", in_set,
                            quad_text(out.witness_matrix));
  }

  Partition c12 = commutator(G.derived, G.eta1, G.eta2);
  Partition c1D = commutator(G.derived, G.eta1, Delta);
  Partition sum = join(c12, c1D);
  Partition joined = commutator(G.derived, G.eta1, join(G.eta2, Delta));
  out.labels = {{"Delta", Delta},
                {"beta2", beta2},
                {"[eta1,eta2]", c12},
                {"[eta1,Delta]", c1D},
                {"[eta1,eta2]v[eta1,Delta]", sum},
                {"[eta1,eta2 v Delta]", joined}};

  const int m = static_cast<int>(G.pairs.size());
  bool diag_singleton = true;
  std::string why;
  for (int i = 0; i < m && diag_singleton; ++i) {
    if (G.pairs[i].first != G.pairs[i].second) continue;
    for (int j = 0; j < m; ++j)
      if (j != i && sum.related(i, j)) {
        diag_singleton = false;
        why = "diagonal element " + std::to_string(i) + " related to " + std::to_string(j);
        break;
      }
  }
  out.checks.emplace_back("diagonal_singleton_under_commutator_join", diag_singleton, why);

  bool collapsed = false;
  for (int i = 0; i < m && !collapsed; ++i) {
    if (G.pairs[i].first != G.pairs[i].second) continue;
    for (int j = 0; j < m; ++j)
      if (j != i && joined.related(i, j)) {
        collapsed = true;
        break;
      }
  }
  out.checks.emplace_back("diagonal_collapsed_under_joined_commutator", collapsed);
  out.checks.emplace_back("right_distributivity_fails", joined != sum,
                          "[eta1,eta2 v Delta] != [eta1,eta2] v [eta1,Delta]");
  return out;
}

// ===== abelian-pentagon pipeline =====

std::optional<PentagonReport> abelian_pentagon_pipeline(const FiniteAlgebra& alg,
                                                        std::size_t lattice_budget,
                                                        std::size_t closure_budget) {
  CongruenceLattice L = con_lattice(alg, lattice_budget);
  std::vector<Pentagon> pents = find_pentagons(L);

  for (const Pentagon& P : pents) {
    PentagonLabels lab = resolve_pentagon(L, P);

    // Verify conditions (1),(2),(3) for a candidate algebra + labels; on
    // success fill the report and return true.
    auto verify = [&](const FiniteAlgebra& B, const Partition& alpha,
                      const Partition& beta, const Partition& delta,
                      const Partition& theta, PentagonReport& rep) -> bool {
      rep.checks.emplace_back("alpha_theta_commutator_zero",
                              commutator(B, alpha, theta, closure_budget) ==
                                  Partition::equality(B.size));
      rep.checks.emplace_back("theta_centralizes_alpha_mod_delta",
                              centralizes(B, theta, alpha, delta, nullptr, closure_budget));
      bool cond3 = true;
      std::string why;
      CongruenceLattice LB = con_lattice(B, lattice_budget);
      int lo = LB.index_of(delta), hi = LB.index_of(theta);
      if (lo < 0 || hi < 0 || !LB.leq_idx(lo, hi)) {
        cond3 = false;
        why = "delta/theta not found in Con";
      } else {
        for (int xi : interval(LB, lo, hi)) {
          const Partition& x = LB.congruences[xi];
          if (relative_commutator(B, alpha, x, delta, closure_budget) != x) {
            cond3 = false;
            why = "fails at x = " + to_text(x);
            break;
          }
        }
      }
      rep.checks.emplace_back("relative_commutator_fixes_interval", cond3, why);
      rep.derived_labels.push_back({"alpha", alpha});
      rep.derived_labels.push_back({"beta", beta});
      rep.derived_labels.push_back({"delta", delta});
      rep.derived_labels.push_back({"theta", theta});
      return rep.ok();
    };

    // First case: the pentagon already has an abelian top over 0 with
    // C(theta,top;delta); feed it through unchanged.
    if (lab.bottom == Partition::equality(alg.size) &&
        commutator(alg, lab.top, lab.top, closure_budget) == Partition::equality(alg.size) &&
        centralizes(alg, lab.theta, lab.top, lab.delta, nullptr, closure_budget)) {
      PentagonReport rep;
      rep.input = P;
      rep.input_labels = {{"bottom", lab.bottom}, {"beta", lab.beta},   {"delta", lab.delta},
                          {"theta", lab.theta},   {"top", lab.top}};
      rep.derived_algebra = alg;
      rep.provenance = "direct: pentagon already abelian at the top";
      PentagonReport candidate = rep;
      if (verify(alg, lab.top, lab.beta, lab.delta, lab.theta, candidate))
        return candidate;
    }

    // Second case: shrink the critical interval to an abelian one via the
    // first x in I(delta,theta] with [x,x]_delta < x, then transform.
    int lo = L.index_of(lab.delta), hi = L.index_of(lab.theta);
    for (int xi : interval(L, lo, hi)) {
      if (xi == lo) continue;
      const Partition& x = L.congruences[xi];
      Partition xx = relative_commutator(alg, x, x, lab.delta, closure_budget);
      if (!(leq(xx, x) && xx != x)) continue;  // not abelian-shrinkable at x

      PentagonLabels shrunk{lab.bottom, lab.beta, xx, x, lab.top};
      try {
        require_pentagon(shrunk);
        if (centralizes(alg, shrunk.beta, shrunk.theta, shrunk.delta, nullptr,
                        closure_budget))
          break;  // transformation hypothesis fails for this pentagon
        PentagonReport rep = better_pentagon(alg, shrunk);
        rep.input = P;
        if (!rep.ok()) break;
        const Partition alpha = rep.derived("alpha'");
        const Partition beta = rep.derived("beta'");
        const Partition delta = rep.derived("delta'");
        const Partition theta = rep.derived("theta'");
        std::ostringstream prov;
        prov << "shrunk critical interval at x = " << to_text(x)
             << " (relative commutator " << to_text(xx) << "), then better_pentagon";
        rep.provenance = prov.str();
        if (verify(rep.derived_algebra, alpha, beta, delta, theta, rep)) return rep;
      } catch (const error&) {
        // candidate failed structurally; fall through to the next pentagon
      }
      break;  // only the first abelian-shrinkable x is tried per pentagon
    }
  }
  return std::nullopt;
}

}  // namespace ualg
