// properties.cpp
//
// The ten commutator properties and the refinement quasi-identity, evaluated
// exhaustively over the congruence lattice with canonical first witnesses.

#include "ualg/properties.hpp"

#include <string>

#include "ualg/errors.hpp"
#include "ualg/graph_algebra.hpp"

namespace ualg {

std::string PropertyReport::scope() const {
  return holds ? "holds on this algebra (instance level)"
               : "fails here, hence fails in the generated variety";
}

PropertyContext property_context(const FiniteAlgebra& alg, std::size_t lattice_budget,
                                 std::size_t closure_budget) {
  PropertyContext ctx;
  ctx.L = con_lattice(alg, lattice_budget);
  const int m = ctx.L.size();
  ctx.comm.assign(m, std::vector<int>(m, -1));
  ctx.cent.assign(m, std::vector<std::vector<char>>(m, std::vector<char>(m, 1)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      MatrixSet M = matrix_set(ctx.L.algebra, ctx.L.congruences[i], ctx.L.congruences[j],
                               closure_budget);
      for (std::size_t q = 0; q < M.size(); ++q) {
        auto [p, qq, r, s] = M.quad(q);
        for (int k = 0; k < m; ++k) {
          const Partition& d = ctx.L.congruences[k];
          if (d.related(p, qq) && !d.related(r, s)) ctx.cent[i][j][k] = 0;
        }
      }
      Partition c = commutator(ctx.L.algebra, ctx.L.congruences[i], ctx.L.congruences[j],
                               closure_budget);
      ctx.comm[i][j] = ctx.L.index_of(c);
      if (ctx.comm[i][j] < 0)
        throw verification_error("commutator missing from the congruence lattice");
      // Consistency: the commutator is the least centralizing congruence.
      if (!ctx.cent[i][j][ctx.comm[i][j]])
        throw verification_error("commutator does not centralize its own pair");
      for (int k = 0; k < m; ++k)
        if (ctx.cent[i][j][k] && !ctx.L.leq_idx(ctx.comm[i][j], k))
          throw verification_error("centralizing congruence below the commutator");
    }
  }
  return ctx;
}

namespace {

const Partition& P(const PropertyContext& ctx, int i) { return ctx.L.congruences[i]; }

std::string nm(const PropertyContext& ctx, int i) { return to_text(P(ctx, i)); }

}  // namespace

// ===== the ten properties =====

PropertyReport check_commutativity(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "commutativity";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      ++rep.triples_checked;
      if (ctx.comm[x][y] != ctx.comm[y][x]) {
        rep.holds = false;
        rep.witness = {P(ctx, x), P(ctx, y)};
        rep.witness_detail = "[x,y] = " + nm(ctx, ctx.comm[x][y]) + " but [y,x] = " +
                             nm(ctx, ctx.comm[y][x]);
        return rep;
      }
    }
  return rep;
}

PropertyReport check_left_distributivity(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "left-distributivity";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        ++rep.triples_checked;
        int lhs = ctx.comm[ctx.L.join_idx(x, y)][z];
        int rhs = ctx.L.join_idx(ctx.comm[x][z], ctx.comm[y][z]);
        if (lhs != rhs) {
          rep.holds = false;
          rep.witness = {P(ctx, x), P(ctx, y), P(ctx, z)};
          rep.witness_detail = "[x v y,z] = " + nm(ctx, lhs) + " but [x,z] v [y,z] = " +
                               nm(ctx, rhs);
          return rep;
        }
      }
  return rep;
}

PropertyReport check_right_distributivity(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "right-distributivity";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        ++rep.triples_checked;
        int lhs = ctx.comm[x][ctx.L.join_idx(y, z)];
        int rhs = ctx.L.join_idx(ctx.comm[x][y], ctx.comm[x][z]);
        if (lhs != rhs) {
          rep.holds = false;
          rep.witness = {P(ctx, x), P(ctx, y), P(ctx, z)};
          rep.witness_detail = "[x,y v z] = " + nm(ctx, lhs) + " but [x,y] v [x,z] = " +
                               nm(ctx, rhs);
          return rep;
        }
      }
  return rep;
}

PropertyReport check_right_semidistributivity(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "right-semidistributivity";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int y2 = 0; y2 < m; ++y2) {
        ++rep.triples_checked;
        if (ctx.comm[x][y] != ctx.comm[x][y2]) continue;
        int joined = ctx.comm[x][ctx.L.join_idx(y, y2)];
        if (joined != ctx.comm[x][y]) {
          rep.holds = false;
          rep.witness = {P(ctx, x), P(ctx, y), P(ctx, y2)};
          rep.witness_detail = "[x,y] = [x,y'] = " + nm(ctx, ctx.comm[x][y]) +
                               " but [x,y v y'] = " + nm(ctx, joined);
          return rep;
        }
      }
  return rep;
}

PropertyReport check_right_annihilators(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "right-annihilators";
  const int m = ctx.L.size();
  const int zero = ctx.L.bottom();
  for (int x = 0; x < m; ++x) {
    ++rep.triples_checked;
    // The candidate largest y is the join of all y with [x,y] = 0; the
    // annihilator exists iff the join still annihilates.  On failure the
    // canonical witness is the first pair whose join escapes.
    int big = zero;
    for (int y = 0; y < m; ++y)
      if (ctx.comm[x][y] == zero) big = ctx.L.join_idx(big, y);
    if (ctx.comm[x][big] == zero) continue;
    rep.holds = false;
    for (int y1 = 0; y1 < m && rep.witness.empty(); ++y1) {
      if (ctx.comm[x][y1] != zero) continue;
      for (int y2 = y1 + 1; y2 < m; ++y2) {
        if (ctx.comm[x][y2] != zero) continue;
        int j = ctx.L.join_idx(y1, y2);
        if (ctx.comm[x][j] != zero) {
          rep.witness = {P(ctx, x), P(ctx, y1), P(ctx, y2)};
          rep.witness_detail = "[x,y1] = [x,y2] = 0 but [x,y1 v y2] = " +
                               nm(ctx, ctx.comm[x][j]);
          break;
        }
      }
    }
    return rep;
  }
  return rep;
}

PropertyReport check_relative_right_annihilators(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "relative-right-annihilators";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int z = 0; z < m; ++z) {
      ++rep.triples_checked;
      int big = ctx.L.bottom();
      for (int y = 0; y < m; ++y)
        if (ctx.cent[x][y][z]) big = ctx.L.join_idx(big, y);
      if (ctx.cent[x][big][z]) continue;
      rep.holds = false;
      for (int y1 = 0; y1 < m && rep.witness.empty(); ++y1) {
        if (!ctx.cent[x][y1][z]) continue;
        for (int y2 = y1 + 1; y2 < m; ++y2) {
          if (!ctx.cent[x][y2][z]) continue;
          int j = ctx.L.join_idx(y1, y2);
          if (!ctx.cent[x][j][z]) {
            rep.witness = {P(ctx, x), P(ctx, z), P(ctx, y1), P(ctx, y2)};
            rep.witness_detail =
                "C(x,y1;z) and C(x,y2;z) hold but C(x,y1 v y2;z) fails";
            break;
          }
        }
      }
      return rep;
    }
  return rep;
}

PropertyReport check_centralizer_symmetry(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "centralizer-symmetry";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        ++rep.triples_checked;
        if (ctx.cent[x][y][z] != ctx.cent[y][x][z]) {
          rep.holds = false;
          rep.witness = {P(ctx, x), P(ctx, y), P(ctx, z)};
          rep.witness_detail = ctx.cent[x][y][z]
                                   ? "C(x,y;z) holds but C(y,x;z) fails"
                                   : "C(y,x;z) holds but C(x,y;z) fails";
          return rep;
        }
      }
  return rep;
}

PropertyReport check_centralizer_determined(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "centralizer-determined";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        ++rep.triples_checked;
        bool c = ctx.cent[x][y][z];
        bool below = ctx.L.leq_idx(ctx.comm[x][y], z);
        if (c != below) {
          rep.holds = false;
          rep.witness = {P(ctx, x), P(ctx, y), P(ctx, z)};
          rep.witness_detail = c ? "C(x,y;z) holds but [x,y] !<= z"
                                 : "[x,y] <= z but C(x,y;z) fails";
          return rep;
        }
      }
  return rep;
}

PropertyReport check_stability(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "stability";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int z2 = 0; z2 < m; ++z2) {
          ++rep.triples_checked;
          if (!ctx.cent[x][y][z] || !ctx.L.leq_idx(z, z2)) continue;
          if (!ctx.cent[x][y][z2]) {
            rep.holds = false;
            rep.witness = {P(ctx, x), P(ctx, y), P(ctx, z), P(ctx, z2)};
            rep.witness_detail = "C(x,y;z) holds, z <= z', but C(x,y;z') fails";
            return rep;
          }
        }
  return rep;
}

PropertyReport check_weak_stability(const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "weak-stability";
  const int m = ctx.L.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int z2 = 0; z2 < m; ++z2) {
          ++rep.triples_checked;
          if (!ctx.cent[x][y][z] || !ctx.L.leq_idx(z, z2)) continue;
          if (!ctx.L.leq_idx(z2, ctx.L.meet_idx(x, y))) continue;
          if (!ctx.cent[x][y][z2]) {
            rep.holds = false;
            rep.witness = {P(ctx, x), P(ctx, y), P(ctx, z), P(ctx, z2)};
            rep.witness_detail =
                "C(x,y;z) holds, z <= z' <= x ^ y, but C(x,y;z') fails";
            return rep;
          }
        }
  return rep;
}

// ===== refinement quasi-identity =====

PropertyReport check_refinement_quasiidentity(const FiniteAlgebra& alg,
                                              const PropertyContext& ctx) {
  PropertyReport rep;
  rep.id = "refinement-quasiidentity";
  const int m = ctx.L.size();
  const int zero = ctx.L.bottom();

  // Delta-disjointness of condition (b)/(d), evaluated on demand and cached
  // per (graph congruence, diagonal congruence) pair.
  std::vector<GraphAlgebra> graphs;
  graphs.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) graphs.push_back(graph_algebra(alg, P(ctx, i)));
  auto disjoint = [&](int a, int b) {
    const GraphAlgebra& G = graphs[static_cast<std::size_t>(a)];
    Partition Delta = delta_congruence(G, P(ctx, b));
    const Partition z = Partition::equality(G.derived.size);
    return meet(G.eta1, Delta) == z && meet(G.eta2, Delta) == z;
  };

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      ++rep.triples_checked;
      const int ab = ctx.comm[a][b];
      const int ba = ctx.comm[b][a];
      const int mt = ctx.L.meet_idx(a, b);
      bool qa = ba == zero && ctx.comm[a][mt] == zero;
      bool qc = ab == zero && ctx.comm[b][mt] == zero;
      if (qa && ab != zero) {
        rep.holds = false;
        rep.witness = {P(ctx, a), P(ctx, b)};
        rep.witness_detail = "[b,a] = 0 and [a,a^b] = 0 but [a,b] = " + nm(ctx, ab);
        return rep;
      }
      bool qb = disjoint(a, b);
      bool qd = disjoint(b, a);
      if (qa != qb || qb != qc || qc != qd) {
        rep.holds = false;
        rep.witness = {P(ctx, a), P(ctx, b)};
        rep.witness_detail = "equivalence broke: (a)=" + std::to_string(qa) +
                             " (b)=" + std::to_string(qb) + " (c)=" +
                             std::to_string(qc) + " (d)=" + std::to_string(qd);
        return rep;
      }
    }
  return rep;
}

std::vector<PropertyReport> check_all(const FiniteAlgebra& alg, std::size_t lattice_budget,
                                      std::size_t closure_budget) {
  PropertyContext ctx = property_context(alg, lattice_budget, closure_budget);
  std::vector<PropertyReport> out;
  out.push_back(check_commutativity(ctx));
  out.push_back(check_left_distributivity(ctx));
  out.push_back(check_right_distributivity(ctx));
  out.push_back(check_right_semidistributivity(ctx));
  out.push_back(check_right_annihilators(ctx));
  out.push_back(check_relative_right_annihilators(ctx));
  out.push_back(check_centralizer_symmetry(ctx));
  out.push_back(check_centralizer_determined(ctx));
  out.push_back(check_stability(ctx));
  out.push_back(check_weak_stability(ctx));
  out.push_back(check_refinement_quasiidentity(alg, ctx));
  return out;
}

// ===== convenience wrappers =====

namespace {
PropertyContext fresh(const FiniteAlgebra& alg) { return property_context(alg); }
}  // namespace

PropertyReport check_commutativity(const FiniteAlgebra& alg) {
  return check_commutativity(fresh(alg));
}
PropertyReport check_left_distributivity(const FiniteAlgebra& alg) {
  return check_left_distributivity(fresh(alg));
}
PropertyReport check_right_distributivity(const FiniteAlgebra& alg) {
  return check_right_distributivity(fresh(alg));
}
PropertyReport check_right_semidistributivity(const FiniteAlgebra& alg) {
  return check_right_semidistributivity(fresh(alg));
}
PropertyReport check_right_annihilators(const FiniteAlgebra& alg) {
  return check_right_annihilators(fresh(alg));
}
PropertyReport check_relative_right_annihilators(const FiniteAlgebra& alg) {
  return check_relative_right_annihilators(fresh(alg));
}
PropertyReport check_centralizer_symmetry(const FiniteAlgebra& alg) {
  return check_centralizer_symmetry(fresh(alg));
}
PropertyReport check_centralizer_determined(const FiniteAlgebra& alg) {
  return check_centralizer_determined(fresh(alg));
}
PropertyReport check_stability(const FiniteAlgebra& alg) {
  return check_stability(fresh(alg));
}
PropertyReport check_weak_stability(const FiniteAlgebra& alg) {
  return check_weak_stability(fresh(alg));
}
PropertyReport check_refinement_quasiidentity(const FiniteAlgebra& alg) {
  return check_refinement_quasiidentity(alg, fresh(alg));
}

}  // namespace ualg
