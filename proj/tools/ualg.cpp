// ualg.cpp
//
// Command-line driver.  One subcommand per library entry point; input files
// are JSON algebras ({name, size, operations:[{name, arity, table}]}).
//
// Output modes: human-readable text (default) or, with --json, a newline-
// delimited stream of JSON records (first record: meta with command, seed,
// and budgets).  Machine output is byte-identical across runs of the same
// config and fixtures.
//
// Exit status: 0 = success; 2 = the computation succeeded and the answer is
// negative (property fails / no such term / construction not applicable),
// with a witness where one exists; 1 = error (parse, validation, budget,
// precondition, or an inconclusive search).  A directory input runs every
// *.alg file independently and exits with the maximum per-file status.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ualg/algebra.hpp"
#include "ualg/centrality.hpp"
#include "ualg/closure.hpp"
#include "ualg/congruence.hpp"
#include "ualg/constructions.hpp"
#include "ualg/errors.hpp"
#include "ualg/io.hpp"
#include "ualg/maltsev.hpp"
#include "ualg/partition.hpp"
#include "ualg/properties.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ===== run configuration =====

struct GlobalOpts {
  std::size_t budget_closure = ualg::kClosureBudget;
  std::size_t budget_lattice = ualg::kLatticeBudget;
  std::size_t budget_free = ualg::kClosureBudget;
  bool machine = false;
  std::uint64_t seed = 1;
  std::string fixture_dir;
};

/// Collects machine records (printed once, at the end) or prints human text
/// immediately.
struct Output {
  bool machine = false;
  ualg::MachineLog log;

  void rec(json j) {
    if (machine) log.add(std::move(j));
  }
  template <typename T>
  Output& operator<<(const T& v) {
    if (!machine) std::cout << v;
    return *this;
  }
};

// ===== input resolution =====

std::string resolve_input(const GlobalOpts& g, const std::string& given) {
  if (fs::exists(given) || g.fixture_dir.empty()) return given;
  const fs::path base = fs::path(g.fixture_dir) / given;
  if (fs::exists(base)) return base.string();
  const fs::path with_ext = fs::path(g.fixture_dir) / (given + ".alg");
  if (fs::exists(with_ext)) return with_ext.string();
  return given;
}

/// A file stays a file; a directory expands to its *.alg files, sorted.
std::vector<std::string> expand_inputs(const GlobalOpts& g, const std::string& given) {
  const std::string r = resolve_input(g, given);
  if (!fs::is_directory(r)) return {r};
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(r))
    if (e.is_regular_file() && e.path().extension() == ".alg")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ualg::argument_error(r + ": no .alg files in directory");
  return files;
}

// ===== shared printing =====

void print_checks(Output& out, const std::vector<ualg::CheckedAssertion>& checks) {
  for (const auto& c : checks) {
    out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.label;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
}

void print_labels(Output& out, const std::vector<ualg::NamedCongruence>& labels) {
  for (const auto& nc : labels) out << "  " << nc.label << " = " << to_text(nc.value) << "\n";
}

void print_pentagon_report(Output& out, const ualg::PentagonReport& rep) {
  out << "input pentagon:\n";
  print_labels(out, rep.input_labels);
  if (!rep.provenance.empty()) out << "provenance: " << rep.provenance << "\n";
  out << "derived algebra: " << rep.derived_algebra.name << " (size "
      << rep.derived_algebra.size << ")\n";
  out << "derived congruences:\n";
  print_labels(out, rep.derived_labels);
  out << "checks:\n";
  print_checks(out, rep.checks);
  out << (rep.ok() ? "all checks passed\n" : "CHECK FAILURE\n");
}

json tagged(const std::string& record, const std::string& input, json body) {
  body["record"] = record;
  body["input"] = input;
  return body;
}

/// Exit status for a construction report: 0 when every machine check passed,
/// 1 (internal inconsistency) otherwise.
int report_status(bool ok) { return ok ? 0 : 1; }

ualg::Partition parse_part(const std::string& text, int n) {
  return ualg::parse_partition(text, n);
}

// ===== per-command options =====

struct Args {
  std::string input;       // primary algebra (file or directory)
  std::string input_b;     // second algebra (product)
  std::string alpha, beta, delta, theta;  // partition texts
  std::string above;       // cg --above
  std::string relative;    // commutator --relative
  std::string side = "right";
  std::string modulo;      // annihilator --modulo
  std::string bottom, top; // better-pentagon flags (with beta/delta/theta)
  std::string kind;        // find-term
  std::string term;        // classify-term / taylor --term
  std::string property;    // check --property
  std::string out_path;    // product/quotient --out
  std::vector<std::string> pairs;  // cg generators "a,b"
  int rank = 2;            // free
  int arity = 0;           // taylor --arity
  bool list_terms = false; // free --terms
};

// ===== subcommand handlers =====
// Each returns the per-file exit status; errors are thrown and mapped by the
// per-file driver.

int cmd_con(const GlobalOpts& g, const Args&, const ualg::FiniteAlgebra& alg,
            const std::string& path, Output& out) {
  const ualg::CongruenceLattice L = ualg::con_lattice(alg, g.budget_lattice);
  out << "Con(" << alg.name << "): " << L.size() << " congruences\n";
  for (int i = 0; i < L.size(); ++i) out << "  [" << i << "] " << to_text(L.congruences[i]) << "\n";
  json jl = ualg::lattice_to_json(L);
  out << "covers:";
  for (const auto& cv : jl["covers"]) out << " " << cv[0].get<int>() << "<" << cv[1].get<int>();
  out << "\nmodular: " << (L.is_modular() ? "yes" : "no") << "\n";
  out.rec(tagged("lattice", path, std::move(jl)));
  return 0;
}

int cmd_cg(const GlobalOpts&, const Args& a, const ualg::FiniteAlgebra& alg,
           const std::string& path, Output& out) {
  std::vector<std::pair<int, int>> pairs;
  for (const std::string& p : a.pairs) {
    const auto comma = p.find(',');
    if (comma == std::string::npos)
      throw ualg::parse_error("pair '" + p + "' must be 'a,b'");
    try {
      pairs.emplace_back(std::stoi(p.substr(0, comma)), std::stoi(p.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ualg::parse_error("pair '" + p + "' must be two integers 'a,b'");
    }
  }
  ualg::Partition result =
      a.above.empty()
          ? ualg::cg_set(alg, pairs)
          : ualg::cg_set_above(alg, parse_part(a.above, alg.size), pairs);
  out << to_text(result) << "\n";
  json body{{"pairs", pairs}, {"result", to_text(result)}};
  if (!a.above.empty()) body["above"] = a.above;
  out.rec(tagged("congruence", path, std::move(body)));
  return 0;
}

int cmd_commutator(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
                   const std::string& path, Output& out) {
  const ualg::Partition alpha = parse_part(a.alpha, alg.size);
  const ualg::Partition beta = parse_part(a.beta, alg.size);
  ualg::Partition result;
  json body{{"alpha", a.alpha}, {"beta", a.beta}};
  if (a.relative.empty()) {
    result = ualg::commutator(alg, alpha, beta, g.budget_closure);
  } else {
    result = ualg::relative_commutator(alg, alpha, beta, parse_part(a.relative, alg.size),
                                       g.budget_closure);
    body["relative"] = a.relative;
  }
  out << to_text(result) << "\n";
  body["result"] = to_text(result);
  out.rec(tagged("commutator", path, std::move(body)));
  return 0;
}

int cmd_centralize(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
                   const std::string& path, Output& out) {
  const ualg::Partition alpha = parse_part(a.alpha, alg.size);
  const ualg::Partition beta = parse_part(a.beta, alg.size);
  const ualg::Partition delta = parse_part(a.delta, alg.size);
  ualg::CentralityWitness w;
  const bool holds = ualg::centralizes(alg, alpha, beta, delta, &w, g.budget_closure);
  json body{{"alpha", a.alpha}, {"beta", a.beta}, {"delta", a.delta}, {"holds", holds}};
  if (holds) {
    out << "C(alpha,beta;delta) holds\n";
    body["witness"] = json::array();
  } else {
    out << "C(alpha,beta;delta) fails; witness matrix [[" << w.quad[0] << "," << w.quad[1]
        << "],[" << w.quad[2] << "," << w.quad[3] << "]]\n";
    body["witness"] = w.quad;
  }
  out.rec(tagged("centralize", path, std::move(body)));
  return holds ? 0 : 2;
}

int cmd_annihilator(const GlobalOpts&, const Args& a, const ualg::FiniteAlgebra& alg,
                    const std::string& path, Output& out) {
  const ualg::Partition beta = parse_part(a.beta, alg.size);
  const ualg::Partition delta = a.modulo.empty()
                                    ? ualg::Partition::equality(alg.size)
                                    : parse_part(a.modulo, alg.size);
  json body{{"side", a.side}, {"beta", a.beta}, {"modulo", to_text(delta)}};
  if (a.side == "left") {
    const ualg::Partition v = ualg::left_annihilator(alg, beta, delta);
    out << to_text(v) << "\n";
    body["exists"] = true;
    body["value"] = to_text(v);
    out.rec(tagged("annihilator", path, std::move(body)));
    return 0;
  }
  const ualg::RightAnnihilator r = ualg::right_annihilator(alg, beta, delta);
  body["exists"] = r.exists;
  if (r.exists) {
    out << to_text(r.value) << "\n";
    body["value"] = to_text(r.value);
  } else {
    out << "no largest centralizing congruence; y = " << to_text(r.witness_y)
        << " and y' = " << to_text(r.witness_y2) << " are centralized but y v y' is not\n";
    body["witness_y"] = to_text(r.witness_y);
    body["witness_y2"] = to_text(r.witness_y2);
  }
  out.rec(tagged("annihilator", path, std::move(body)));
  return r.exists ? 0 : 2;
}

int cmd_pentagons(const GlobalOpts& g, const Args&, const ualg::FiniteAlgebra& alg,
                  const std::string& path, Output& out) {
  const ualg::CongruenceLattice L = ualg::con_lattice(alg, g.budget_lattice);
  const std::vector<ualg::Pentagon> ps = ualg::find_pentagons(L);
  out << ps.size() << " pentagon(s) in Con(" << alg.name << ")\n";
  json arr = json::array();
  for (const auto& p : ps) {
    const json jp = ualg::pentagon_to_json(p, L);
    out << "  bottom=" << jp["bottom"].get<std::string>()
        << " beta=" << jp["beta"].get<std::string>()
        << " delta=" << jp["delta"].get<std::string>()
        << " theta=" << jp["theta"].get<std::string>()
        << " top=" << jp["top"].get<std::string>() << "\n";
    arr.push_back(jp);
  }
  out.rec(tagged("pentagons", path, json{{"count", ps.size()}, {"pentagons", arr}}));
  return 0;
}

int cmd_better_pentagon(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
                        const std::string& path, Output& out) {
  const bool all_given = !a.bottom.empty() && !a.beta.empty() && !a.delta.empty() &&
                         !a.theta.empty() && !a.top.empty();
  std::optional<ualg::PentagonReport> rep;
  if (all_given) {
    ualg::PentagonLabels P{parse_part(a.bottom, alg.size), parse_part(a.beta, alg.size),
                           parse_part(a.delta, alg.size), parse_part(a.theta, alg.size),
                           parse_part(a.top, alg.size)};
    rep = ualg::better_pentagon(alg, P);
  } else {
    // Search the pentagons matching whichever labels were pinned; use the
    // first one whose preconditions hold.
    ualg::PentagonConstraints cons;
    if (!a.bottom.empty()) cons.bottom = parse_part(a.bottom, alg.size);
    if (!a.beta.empty()) cons.beta = parse_part(a.beta, alg.size);
    if (!a.delta.empty()) cons.delta = parse_part(a.delta, alg.size);
    if (!a.theta.empty()) cons.theta = parse_part(a.theta, alg.size);
    if (!a.top.empty()) cons.top = parse_part(a.top, alg.size);
    const ualg::CongruenceLattice L = ualg::con_lattice(alg, g.budget_lattice);
    for (const ualg::Pentagon& p : ualg::find_pentagons(L, cons)) {
      try {
        rep = ualg::better_pentagon(alg, ualg::resolve_pentagon(L, p));
        break;
      } catch (const ualg::precondition_error&) {
        continue;
      }
    }
    if (!rep) {
      out << "not applicable: no pentagon of Con(" << alg.name
          << ") satisfies the centrality preconditions\n";
      out.rec(tagged("better-pentagon", path, json{{"applicable", false}}));
      return 2;
    }
  }
  print_pentagon_report(out, *rep);
  json body = ualg::pentagon_report_to_json(*rep);
  body["applicable"] = true;
  out.rec(tagged("better-pentagon", path, std::move(body)));
  return report_status(rep->ok());
}

int cmd_gadget(const GlobalOpts&, const Args& a, const ualg::FiniteAlgebra& alg,
               const std::string& path, Output& out, bool left) {
  const ualg::Partition alpha = parse_part(a.alpha, alg.size);
  const ualg::Partition beta = parse_part(a.beta, alg.size);
  const ualg::DistributivityGadget gd =
      left ? ualg::left_distributivity_gadget(alg, alpha, beta)
           : ualg::right_distributivity_gadget(alg, alpha, beta);
  out << "graph algebra: " << gd.graph.derived.name << " (size " << gd.graph.derived.size
      << ")\n";
  print_labels(out, gd.labels);
  if (left)
    out << "witness diagonal pair: (" << gd.witness_diagonal.first << ","
        << gd.witness_diagonal.second << ")\n";
  else
    out << "witness matrix (derived ids): [" << gd.witness_matrix[0] << ","
        << gd.witness_matrix[1] << "," << gd.witness_matrix[2] << "," << gd.witness_matrix[3]
        << "]\n";
  out << "checks:\n";
  print_checks(out, gd.checks);
  out << (gd.ok() ? "all checks passed\n" : "CHECK FAILURE\n");
  out.rec(tagged(left ? "gadget-left" : "gadget-right", path, ualg::gadget_to_json(gd)));
  return report_status(gd.ok());
}

int cmd_pipeline(const GlobalOpts& g, const Args&, const ualg::FiniteAlgebra& alg,
                 const std::string& path, Output& out) {
  const std::optional<ualg::PentagonReport> rep =
      ualg::abelian_pentagon_pipeline(alg, g.budget_lattice, g.budget_closure);
  if (!rep) {
    out << "not applicable: no pentagon of Con(" << alg.name
        << ") admits the abelian transformation\n";
    out.rec(tagged("pipeline", path, json{{"applicable", false}}));
    return 2;
  }
  print_pentagon_report(out, *rep);
  json body = ualg::pentagon_report_to_json(*rep);
  body["applicable"] = true;
  out.rec(tagged("pipeline", path, std::move(body)));
  return report_status(rep->ok());
}

int cmd_herringbone(const GlobalOpts&, const Args& a, const ualg::FiniteAlgebra& alg,
                    const std::string& path, Output& out) {
  const ualg::Partition tb = parse_part(a.theta, alg.size);
  const ualg::Partition ab = parse_part(a.alpha, alg.size);
  const ualg::HerringboneState st = ualg::herringbone(alg, tb, ab);
  out << "D = " << st.D.derived.name << " (size " << st.D.derived.size << ")\n";
  out << "eta   = " << to_text(st.eta) << "\n";
  out << "Delta = " << to_text(st.Delta) << "\n";
  out << "Gamma = " << to_text(st.Gamma) << "\n";
  out << "stabilization index: " << st.stabilization_index << "\n";
  out << "eta_inf   = " << to_text(st.eta_inf) << "\n";
  out << "Delta_inf = " << to_text(st.delta_inf) << "\n";
  out << "Gamma_inf = " << to_text(st.gamma_inf) << "\n";
  out << "checks:\n";
  print_checks(out, st.checks);
  out << (st.ok() ? "all checks passed\n" : "CHECK FAILURE\n");
  out.rec(tagged("herringbone", path, ualg::herringbone_to_json(st)));
  return report_status(st.ok());
}

int cmd_sdfail(const GlobalOpts& g, const Args&, const ualg::FiniteAlgebra& alg,
               const std::string& path, Output& out) {
  const std::optional<ualg::SdFailureReport> rep =
      ualg::semidistributivity_failure(alg, g.budget_lattice, g.budget_closure);
  if (!rep) {
    out << "not applicable: the abelian pentagon pipeline found nothing in Con(" << alg.name
        << ")\n";
    out.rec(tagged("sdfail", path, json{{"applicable", false}}));
    return 2;
  }
  out << "E = " << rep->E.name << " (size " << rep->E.size << ")\n";
  out << "x = " << to_text(rep->x) << "\n";
  out << "y = " << to_text(rep->y) << "\n";
  out << "z = " << to_text(rep->z) << "\n";
  out << "checks:\n";
  print_checks(out, rep->checks);
  out << (rep->ok() ? "all checks passed: [x,y] = 0, [x,z] = 0, [x,y v z] != 0\n"
                    : "CHECK FAILURE\n");
  json body = ualg::sd_failure_to_json(*rep);
  body["applicable"] = true;
  out.rec(tagged("sdfail", path, std::move(body)));
  return report_status(rep->ok());
}

int cmd_free(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
             const std::string& path, Output& out) {
  const ualg::FreeAlgebra F = ualg::free_algebra(alg, a.rank, g.budget_free);
  out << F.algebra.name << ": " << F.algebra.size << " elements over " << alg.name << "\n";
  json body{{"rank", a.rank},
            {"elements", F.algebra.size},
            {"generators", F.generator_elements}};
  if (a.list_terms) {
    json terms = json::array();
    for (int e = 0; e < F.algebra.size; ++e) {
      const std::string t = ualg::term_to_text(alg, F.term_of(e));
      out << "  [" << e << "] " << t << "\n";
      terms.push_back(t);
    }
    body["terms"] = terms;
  }
  out.rec(tagged("free", path, std::move(body)));
  return 0;
}

int cmd_find_term(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
                  const std::string& path, Output& out) {
  const std::optional<ualg::TermKind> kind = ualg::parse_term_kind(a.kind);
  if (!kind)
    throw ualg::argument_error("unknown term kind '" + a.kind +
                               "' (right-maltsev, left-maltsev, maltsev, right-difference, "
                               "left-difference, weak-difference, difference, taylor)");
  const ualg::TermSearchResult res = ualg::find_term(alg, *kind, g.budget_free);
  json body{{"kind", a.kind}, {"outcome", res.outcome}, {"note", res.note}};
  if (res.outcome == "found") {
    const json jc = ualg::certificate_to_json(*res.certificate, alg);
    out << "found: " << jc["term"].get<std::string>() << "\n";
    out << "kinds:";
    for (const auto& k : jc["kinds"]) out << " " << k.get<std::string>();
    out << "\n";
    for (const auto& e : jc["evidence"]) out << "  " << e.get<std::string>() << "\n";
    body["certificate"] = jc;
  }
  if (!res.note.empty() && !out.machine) out << "note: " << res.note << "\n";
  if (res.outcome == "none") out << "none: no such term operation exists\n";
  if (res.outcome == "inconclusive") out << "inconclusive: budget exhausted\n";
  out.rec(tagged("find-term", path, std::move(body)));
  if (res.outcome == "found") return 0;
  return res.outcome == "none" ? 2 : 1;
}

int cmd_classify_term(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
                      const std::string& path, Output& out) {
  const ualg::Term t = ualg::parse_term(alg, a.term);
  const ualg::TermCertificate cert = ualg::classify_term(alg, t, g.budget_free);
  const json jc = ualg::certificate_to_json(cert, alg);
  out << "term: " << jc["term"].get<std::string>() << "\n";
  out << "kinds:";
  for (const auto& k : jc["kinds"]) out << " " << k.get<std::string>();
  if (cert.kinds.empty()) out << " (none)";
  out << "\n";
  for (const auto& e : jc["evidence"]) out << "  " << e.get<std::string>() << "\n";
  out.rec(tagged("classify-term", path, json{{"certificate", jc}}));
  return 0;
}

int cmd_taylor(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
               const std::string& path, Output& out) {
  if (!a.term.empty()) {
    const ualg::Term t = ualg::parse_term(alg, a.term);
    const ualg::TaylorReport rep = ualg::is_taylor_term(alg, t, a.arity);
    if (rep.holds) {
      out << "Taylor term: yes\n";
      for (const auto& w : rep.witnesses) {
        auto pat = [](const std::vector<int>& v) {
          std::string s;
          for (int b : v) s += (b == 0 ? 'x' : 'y');
          return s;
        };
        out << "  place " << w.place << ": T(" << pat(w.w) << ") = T(" << pat(w.z) << ")\n";
      }
    } else {
      out << "Taylor term: no (" << rep.failure << ")\n";
    }
    json body = ualg::taylor_report_to_json(rep);
    body["term"] = a.term;
    out.rec(tagged("taylor", path, std::move(body)));
    return rep.holds ? 0 : 2;
  }
  const ualg::TaylorExistence ex = ualg::has_taylor_term_idempotent(alg, g.budget_closure);
  if (ex.has_taylor) {
    out << "Taylor term exists: yes\n";
  } else {
    out << "Taylor term exists: no\n";
    out << "  subuniverse:";
    for (int v : ex.subuniverse) out << " " << v;
    out << "\n  two-block congruence: " << to_text(ex.two_block) << "\n  " << ex.detail
        << "\n";
  }
  json body{{"holds", ex.has_taylor},
            {"subuniverse", ex.subuniverse},
            {"detail", ex.detail}};
  if (!ex.has_taylor) body["two_block"] = to_text(ex.two_block);
  out.rec(tagged("taylor", path, std::move(body)));
  return ex.has_taylor ? 0 : 2;
}

int cmd_check(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
              const std::string& path, Output& out) {
  const std::vector<ualg::PropertyReport> all =
      ualg::check_all(alg, g.budget_lattice, g.budget_closure);
  std::vector<ualg::PropertyReport> selected;
  for (const auto& r : all)
    if (a.property.empty() || r.id == a.property) selected.push_back(r);
  if (selected.empty())
    throw ualg::argument_error("unknown property id '" + a.property + "'");
  bool all_hold = true;
  for (const auto& r : selected) {
    out << r.id << ": " << (r.holds ? "holds" : "FAILS") << " (" << r.scope() << "; "
        << r.triples_checked << " tuples checked)\n";
    if (!r.holds) {
      all_hold = false;
      out << "  witness:";
      for (const auto& w : r.witness) out << " " << to_text(w);
      out << "\n  " << r.witness_detail << "\n";
    }
    out.rec(tagged("property", path, ualg::property_report_to_json(r)));
  }
  return all_hold ? 0 : 2;
}

int cmd_quotient(const GlobalOpts&, const Args& a, const ualg::FiniteAlgebra& alg,
                 const std::string& path, Output& out) {
  const ualg::QuotientResult q = ualg::quotient(alg, parse_part(a.theta, alg.size));
  if (!a.out_path.empty()) {
    ualg::write_algebra(q.algebra, a.out_path);
    out << "wrote " << a.out_path << "\n";
  } else {
    out << ualg::algebra_to_json(q.algebra).dump(2) << "\n";
  }
  out.rec(tagged("quotient", path,
                 json{{"theta", a.theta},
                      {"algebra", ualg::algebra_to_json(q.algebra)},
                      {"block_of", q.block_of}}));
  return 0;
}

int cmd_report_all(const GlobalOpts& g, const Args& a, const ualg::FiniteAlgebra& alg,
                   const std::string& path, Output& out) {
  cmd_con(g, a, alg, path, out);
  cmd_pentagons(g, a, alg, path, out);
  const std::vector<ualg::PropertyReport> all =
      ualg::check_all(alg, g.budget_lattice, g.budget_closure);
  for (const auto& r : all) {
    out << r.id << ": " << (r.holds ? "holds" : "FAILS") << "\n";
    if (!r.holds) {
      out << "  witness:";
      for (const auto& w : r.witness) out << " " << to_text(w);
      out << "\n  " << r.witness_detail << "\n";
    }
    out.rec(tagged("property", path, ualg::property_report_to_json(r)));
  }
  return 0;  // report-all is a survey; findings are not a failure
}

// ===== driver =====

using Handler = std::function<int(const GlobalOpts&, const Args&, const ualg::FiniteAlgebra&,
                                  const std::string&, Output&)>;

int run_files(const GlobalOpts& g, const Args& a, Output& out, const Handler& h) {
  int status = 0;
  for (const std::string& path : expand_inputs(g, a.input)) {
    try {
      const ualg::FiniteAlgebra alg = ualg::parse_algebra(path);
      status = std::max(status, h(g, a, alg, path, out));
    } catch (const ualg::error& e) {
      if (out.machine)
        out.rec(json{{"record", "error"}, {"input", path}, {"message", e.what()}});
      else
        std::cerr << "error: " << e.what() << "\n";
      status = std::max(status, 1);
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  Args a;

  CLI::App app{"exact commutator-theoretic computation on finite algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget-closure", g.budget_closure, "cap on closure sizes")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-lattice", g.budget_lattice, "cap on congruence lattice size")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-free", g.budget_free, "cap on free-algebra closures")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.machine, "emit newline-delimited JSON records");
  app.add_option("--seed", g.seed, "seed recorded in machine output");
  app.add_option("--fixture-dir", g.fixture_dir, "directory for resolving bare input names");

  auto input_opt = [&a](CLI::App* sub) {
    sub->add_option("algebra", a.input, "algebra file (or directory of .alg files)")
        ->required();
  };

  CLI::App* con = app.add_subcommand("con", "congruence lattice");
  input_opt(con);

  CLI::App* cg = app.add_subcommand("cg", "congruence generated by pairs");
  input_opt(cg);
  cg->add_option("pairs", a.pairs, "generating pairs a,b")->required();
  cg->add_option("--above", a.above, "congruence to start from");

  CLI::App* comm = app.add_subcommand("commutator", "term-condition commutator [alpha,beta]");
  input_opt(comm);
  comm->add_option("alpha", a.alpha)->required();
  comm->add_option("beta", a.beta)->required();
  comm->add_option("--relative", a.relative, "compute [alpha,beta]_delta");

  CLI::App* cent = app.add_subcommand("centralize", "centrality C(alpha,beta;delta)");
  input_opt(cent);
  cent->add_option("alpha", a.alpha)->required();
  cent->add_option("beta", a.beta)->required();
  cent->add_option("delta", a.delta)->required();

  CLI::App* ann = app.add_subcommand("annihilator", "largest centralizing congruence");
  input_opt(ann);
  ann->add_option("beta", a.beta)->required();
  ann->add_option("--side", a.side, "left or right (default right)")
      ->check(CLI::IsMember({"left", "right"}));
  ann->add_option("--modulo", a.modulo, "compute modulo this congruence (default equality)");

  CLI::App* pent = app.add_subcommand("pentagons", "pentagon sublattices of Con(A)");
  input_opt(pent);

  CLI::App* bp = app.add_subcommand("better-pentagon", "pentagon improvement construction");
  input_opt(bp);
  bp->add_option("--bottom", a.bottom);
  bp->add_option("--beta", a.beta);
  bp->add_option("--delta", a.delta);
  bp->add_option("--theta", a.theta);
  bp->add_option("--top", a.top);

  CLI::App* gl = app.add_subcommand("gadget-left", "left-distributivity failure gadget");
  input_opt(gl);
  gl->add_option("alpha", a.alpha)->required();
  gl->add_option("beta", a.beta)->required();

  CLI::App* gr = app.add_subcommand("gadget-right", "right-distributivity failure gadget");
  input_opt(gr);
  gr->add_option("alpha", a.alpha)->required();
  gr->add_option("beta", a.beta)->required();

  CLI::App* pipe = app.add_subcommand("pipeline", "abelian-pentagon pipeline");
  input_opt(pipe);

  CLI::App* herr = app.add_subcommand("herringbone", "alternating congruence sequences");
  input_opt(herr);
  herr->add_option("theta", a.theta, "theta-bar")->required();
  herr->add_option("alpha", a.alpha, "alpha-bar")->required();

  CLI::App* sd = app.add_subcommand("sdfail", "semidistributivity failure witness");
  input_opt(sd);

  CLI::App* fr = app.add_subcommand("free", "free algebra F(k) over A");
  input_opt(fr);
  fr->add_option("rank", a.rank, "number of generators")->required()->check(CLI::PositiveNumber);
  fr->add_flag("--terms", a.list_terms, "list provenance terms");

  CLI::App* ft = app.add_subcommand("find-term", "search ternary term operations");
  input_opt(ft);
  ft->add_option("kind", a.kind, "term kind to search for")->required();

  CLI::App* ct = app.add_subcommand("classify-term", "certificate kinds of a given term");
  input_opt(ct);
  ct->add_option("term", a.term, "term in prefix notation, e.g. '(f x y z)'")->required();

  CLI::App* ty = app.add_subcommand("taylor", "Taylor term checks");
  input_opt(ty);
  ty->add_option("--term", a.term, "check this term (default: existence for idempotent A)");
  ty->add_option("--arity", a.arity, "treat the term as this arity");

  CLI::App* ck = app.add_subcommand("check", "commutator property suite");
  input_opt(ck);
  ck->add_option("--property", a.property, "run one property by id");

  CLI::App* prod = app.add_subcommand("product", "direct product of two algebras");
  prod->add_option("a", a.input, "first algebra file")->required();
  prod->add_option("b", a.input_b, "second algebra file")->required();
  prod->add_option("--out", a.out_path, "write result here instead of stdout");

  CLI::App* quot = app.add_subcommand("quotient", "quotient algebra A/theta");
  input_opt(quot);
  quot->add_option("theta", a.theta)->required();
  quot->add_option("--out", a.out_path, "write result here instead of stdout");

  CLI::App* ra = app.add_subcommand("report-all", "lattice, pentagons, and property suite");
  input_opt(ra);

  CLI11_PARSE(app, argc, argv);

  const CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();

  Output out;
  out.machine = g.machine;
  json meta{{"record", "meta"},
            {"command", cmd},
            {"seed", g.seed},
            {"budget_closure", g.budget_closure},
            {"budget_lattice", g.budget_lattice},
            {"budget_free", g.budget_free}};
  meta["inputs"] = cmd == "product" ? json::array({a.input, a.input_b})
                                    : json::array({a.input});
  out.rec(std::move(meta));

  int status = 0;
  try {
    if (cmd == "product") {
      // Two explicit files; no directory expansion.
      const ualg::FiniteAlgebra fa = ualg::parse_algebra(resolve_input(g, a.input));
      const ualg::FiniteAlgebra fb = ualg::parse_algebra(resolve_input(g, a.input_b));
      const ualg::FiniteAlgebra p = ualg::direct_product(fa, fb);
      if (!a.out_path.empty()) {
        ualg::write_algebra(p, a.out_path);
        out << "wrote " << a.out_path << "\n";
      } else {
        out << ualg::algebra_to_json(p).dump(2) << "\n";
      }
      out.rec(json{{"record", "product"}, {"algebra", ualg::algebra_to_json(p)}});
    } else {
      static const std::vector<std::pair<std::string, Handler>> table = {
          {"con", cmd_con},
          {"cg", cmd_cg},
          {"commutator", cmd_commutator},
          {"centralize", cmd_centralize},
          {"annihilator", cmd_annihilator},
          {"pentagons", cmd_pentagons},
          {"better-pentagon", cmd_better_pentagon},
          {"gadget-left",
           [](const GlobalOpts& gg, const Args& aa, const ualg::FiniteAlgebra& al,
              const std::string& p, Output& o) { return cmd_gadget(gg, aa, al, p, o, true); }},
          {"gadget-right",
           [](const GlobalOpts& gg, const Args& aa, const ualg::FiniteAlgebra& al,
              const std::string& p, Output& o) { return cmd_gadget(gg, aa, al, p, o, false); }},
          {"pipeline", cmd_pipeline},
          {"herringbone", cmd_herringbone},
          {"sdfail", cmd_sdfail},
          {"free", cmd_free},
          {"find-term", cmd_find_term},
          {"classify-term", cmd_classify_term},
          {"taylor", cmd_taylor},
          {"check", cmd_check},
          {"quotient", cmd_quotient},
          {"report-all", cmd_report_all},
      };
      for (const auto& [name, handler] : table)
        if (name == cmd) {
          status = run_files(g, a, out, handler);
          break;
        }
    }
  } catch (const ualg::error& e) {
    if (out.machine)
      out.rec(json{{"record", "error"}, {"message", e.what()}});
    else
      std::cerr << "error: " << e.what() << "\n";
    status = 1;
  }

  if (out.machine) std::cout << out.log.serialize();
  return status;
}
