// io.hpp
//
// Algebra file parsing (JSON: {name, size, operations:[{name,arity,table}]}),
// JSON serialization for every report type, and the newline-delimited machine
// record stream.  Machine output is deterministic: nlohmann::json objects
// keep keys sorted, records are emitted one per line in computation order.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ualg/algebra.hpp"
#include "ualg/congruence.hpp"
#include "ualg/constructions.hpp"
#include "ualg/maltsev.hpp"
#include "ualg/partition.hpp"
#include "ualg/properties.hpp"

namespace ualg {

// ===== algebra files =====

nlohmann::json algebra_to_json(const FiniteAlgebra& alg);
/// Parse + validate; throws parse_error naming the offending field.
FiniteAlgebra algebra_from_json(const nlohmann::json& j, const std::string& origin);
FiniteAlgebra parse_algebra_text(const std::string& text,
                                 const std::string& origin = "<string>");
FiniteAlgebra parse_algebra(const std::string& path);
void write_algebra(const FiniteAlgebra& alg, const std::string& path);

// ===== report serialization =====

nlohmann::json partition_to_json(const Partition& p);
nlohmann::json checks_to_json(const std::vector<CheckedAssertion>& checks);
nlohmann::json lattice_to_json(const CongruenceLattice& L);
nlohmann::json pentagon_to_json(const Pentagon& p, const CongruenceLattice& L);
nlohmann::json property_report_to_json(const PropertyReport& rep);
nlohmann::json pentagon_report_to_json(const PentagonReport& rep);
nlohmann::json gadget_to_json(const DistributivityGadget& g);
nlohmann::json herringbone_to_json(const HerringboneState& st);
nlohmann::json sd_failure_to_json(const SdFailureReport& rep);
nlohmann::json certificate_to_json(const TermCertificate& cert, const FiniteAlgebra& alg);
nlohmann::json taylor_report_to_json(const TaylorReport& rep);

// ===== machine record stream =====

/// Accumulates one JSON object per record; serialize() emits one compact
/// line per record (ndjson).  parse_machine() inverts it exactly.
struct MachineLog {
  std::vector<nlohmann::json> records;

  void add(nlohmann::json rec);
  std::string serialize() const;
};

std::vector<nlohmann::json> parse_machine(const std::string& text);

}  // namespace ualg
