// io.cpp
//
// JSON algebra files, report serialization, and the machine record stream.

#include "ualg/io.hpp"

#include <fstream>
#include <sstream>

#include "ualg/errors.hpp"

using nlohmann::json;

namespace ualg {

// ===== algebra files =====

json algebra_to_json(const FiniteAlgebra& alg) {
  json ops = json::array();
  for (const auto& op : alg.ops)
    ops.push_back(json{{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
  return json{{"name", alg.name}, {"size", alg.size}, {"operations", ops}};
}

FiniteAlgebra algebra_from_json(const json& j, const std::string& origin) {
  auto fail = [&origin](const std::string& what) -> void {
    throw parse_error(origin + ": " + what);
  };
  if (!j.is_object()) fail("top level must be an object");
  if (!j.contains("name") || !j["name"].is_string()) fail("field 'name' (string) required");
  if (!j.contains("size") || !j["size"].is_number_integer())
    fail("field 'size' (integer) required");
  if (!j.contains("operations") || !j["operations"].is_array())
    fail("field 'operations' (array) required");
  FiniteAlgebra alg;
  alg.name = j["name"].get<std::string>();
  alg.size = j["size"].get<int>();
  for (std::size_t i = 0; i < j["operations"].size(); ++i) {
    const json& jo = j["operations"][i];
    const std::string where = "operations[" + std::to_string(i) + "]";
    if (!jo.is_object()) fail(where + " must be an object");
    if (!jo.contains("name") || !jo["name"].is_string())
      fail(where + ".name (string) required");
    if (!jo.contains("arity") || !jo["arity"].is_number_integer())
      fail(where + ".arity (integer) required");
    if (!jo.contains("table") || !jo["table"].is_array())
      fail(where + ".table (array) required");
    OperationTable op;
    op.name = jo["name"].get<std::string>();
    op.arity = jo["arity"].get<int>();
    for (const json& v : jo["table"]) {
      if (!v.is_number_integer()) fail(where + ".table entries must be integers");
      op.table.push_back(v.get<int>());
    }
    alg.ops.push_back(std::move(op));
  }
  try {
    validate(alg);
  } catch (const argument_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
  return alg;
}

FiniteAlgebra parse_algebra_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(origin + ": " + e.what());
  }
  return algebra_from_json(j, origin);
}

FiniteAlgebra parse_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra_text(buf.str(), path);
}

void write_algebra(const FiniteAlgebra& alg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw argument_error(path + ": cannot open for writing");
  out << algebra_to_json(alg).dump(2) << "\n";
}

// ===== report serialization =====

json partition_to_json(const Partition& p) {
  return json{{"n", p.n}, {"text", to_text(p)}};
}

json checks_to_json(const std::vector<CheckedAssertion>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back(json{{"label", c.label}, {"passed", c.passed}, {"detail", c.detail}});
  return arr;
}

json lattice_to_json(const CongruenceLattice& L) {
  json congs = json::array();
  for (const auto& c : L.congruences) congs.push_back(to_text(c));
  // Cover edges of the Hasse diagram, in index order.
  json covers = json::array();
  const int m = L.size();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !L.leq_idx(i, j)) continue;
      bool is_cover = true;
      for (int k = 0; k < m && is_cover; ++k)
        if (k != i && k != j && L.leq_idx(i, k) && L.leq_idx(k, j)) is_cover = false;
      if (is_cover) covers.push_back(json::array({i, j}));
    }
  return json{{"algebra", L.algebra.name},
              {"congruences", congs},
              {"covers", covers},
              {"modular", L.is_modular()}};
}

json pentagon_to_json(const Pentagon& p, const CongruenceLattice& L) {
  auto t = [&L](int i) { return to_text(L.congruences[i]); };
  return json{{"bottom", t(p.bottom)},
              {"beta", t(p.beta)},
              {"delta", t(p.delta)},
              {"theta", t(p.theta)},
              {"top", t(p.top)}};
}

json property_report_to_json(const PropertyReport& rep) {
  json wit = json::array();
  for (const auto& p : rep.witness) wit.push_back(to_text(p));
  return json{{"id", rep.id},
              {"holds", rep.holds},
              {"scope", rep.scope()},
              {"triples_checked", rep.triples_checked},
              {"witness", wit},
              {"witness_detail", rep.witness_detail}};
}

namespace {

json named_congruences_to_json(const std::vector<NamedCongruence>& labels) {
  json obj = json::object();
  for (const auto& nc : labels) obj[nc.label] = to_text(nc.value);
  return obj;
}

}  // namespace

json pentagon_report_to_json(const PentagonReport& rep) {
  return json{{"input_labels", named_congruences_to_json(rep.input_labels)},
              {"derived_algebra", algebra_to_json(rep.derived_algebra)},
              {"derived_labels", named_congruences_to_json(rep.derived_labels)},
              {"checks", checks_to_json(rep.checks)},
              {"provenance", rep.provenance},
              {"ok", rep.ok()}};
}

json gadget_to_json(const DistributivityGadget& g) {
  return json{{"graph_algebra", g.graph.derived.name},
              {"graph_size", g.graph.derived.size},
              {"labels", named_congruences_to_json(g.labels)},
              {"witness_diagonal", json::array({g.witness_diagonal.first,
                                                g.witness_diagonal.second})},
              {"witness_matrix", g.witness_matrix},
              {"checks", checks_to_json(g.checks)},
              {"ok", g.ok()}};
}

json herringbone_to_json(const HerringboneState& st) {
  auto seq = [](const std::vector<Partition>& v) {
    json arr = json::array();
    for (const auto& p : v) arr.push_back(to_text(p));
    return arr;
  };
  return json{{"algebra", st.b.name},
              {"derived_size", st.D.derived.size},
              {"eta", to_text(st.eta)},
              {"Delta", to_text(st.Delta)},
              {"Gamma", to_text(st.Gamma)},
              {"eta_seq", seq(st.eta_seq)},
              {"delta_seq", seq(st.delta_seq)},
              {"gamma_seq", seq(st.gamma_seq)},
              {"eta_inf", to_text(st.eta_inf)},
              {"delta_inf", to_text(st.delta_inf)},
              {"gamma_inf", to_text(st.gamma_inf)},
              {"stabilization_index", st.stabilization_index},
              {"checks", checks_to_json(st.checks)},
              {"ok", st.ok()}};
}

json sd_failure_to_json(const SdFailureReport& rep) {
  return json{{"pipeline", pentagon_report_to_json(rep.pipeline)},
              {"b", algebra_to_json(rep.b)},
              {"herringbone", herringbone_to_json(rep.state)},
              {"base_witness", rep.base_witness},
              {"matrix", rep.matrix},
              {"U", rep.U},
              {"E", algebra_to_json(rep.E)},
              {"x", to_text(rep.x)},
              {"y", to_text(rep.y)},
              {"z", to_text(rep.z)},
              {"checks", checks_to_json(rep.checks)},
              {"ok", rep.ok()}};
}

json certificate_to_json(const TermCertificate& cert, const FiniteAlgebra& alg) {
  json kinds = json::array();
  for (TermKind k : cert.kinds) kinds.push_back(term_kind_name(k));
  return json{{"term", term_to_text(alg, cert.term)},
              {"kinds", kinds},
              {"evidence", cert.evidence}};
}

json taylor_report_to_json(const TaylorReport& rep) {
  json wits = json::array();
  for (const auto& w : rep.witnesses)
    wits.push_back(json{{"place", w.place}, {"w", w.w}, {"z", w.z}});
  return json{{"holds", rep.holds},
              {"idempotent", rep.idempotence.holds},
              {"witnesses", wits},
              {"failure", rep.failure}};
}

// ===== machine record stream =====

void MachineLog::add(json rec) { records.push_back(std::move(rec)); }

std::string MachineLog::serialize() const {
  std::ostringstream out;
  for (const auto& r : records) out << r.dump() << "\n";
  return out.str();
}

std::vector<json> parse_machine(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw parse_error("machine record line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ualg
