// test_cli.cpp
//
// End-to-end tests of the command-line driver: exit-status policy (0 positive,
// 2 negative answer with witness, 1 error), human-readable output, the
// newline-delimited machine record stream and its byte-level determinism,
// input resolution (files, directories, --fixture-dir), and the product /
// quotient round trip through algebra files.
//
// The driver binary and the fixtures directory come from the UALG_CLI and
// UALG_FIXTURES environment variables (set by ctest).

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "json.hpp"
#include "ualg/algebra.hpp"
#include "ualg/centrality.hpp"
#include "ualg/closure.hpp"
#include "ualg/congruence.hpp"
#include "ualg/constructions.hpp"
#include "ualg/io.hpp"
#include "ualg/partition.hpp"

using nlohmann::json;
using namespace ualg;
using ualg::testing::z2s2;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

// No argument used below contains a single quote.
std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

std::string cli_path() {
  const char* cli = std::getenv("UALG_CLI");
  REQUIRE(cli != nullptr);
  return cli;
}

std::string fixtures_dir() {
  const char* dir = std::getenv("UALG_FIXTURES");
  REQUIRE(dir != nullptr);
  return dir;
}

std::string fx(const std::string& name) { return fixtures_dir() + "/" + name; }

/// Run the driver with the given arguments; capture stdout, discard stderr,
/// return the exit status.
RunResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(cli_path());
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  REQUIRE(rc != -1);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

/// The pipeline quotient b = B/delta' with the images of theta and alpha:
/// the one corpus member with an asymmetric commutator pair, needed by the
/// herringbone / gadget / annihilator negative-path commands.  Written out
/// as an algebra file once per process.
struct QuotientFixture {
  FiniteAlgebra b;
  Partition theta_bar, alpha_bar;
  std::string path;
};

const QuotientFixture& quotient_fixture() {
  static const QuotientFixture qf = [] {
    const std::optional<PentagonReport> rep = abelian_pentagon_pipeline(z2s2());
    REQUIRE(rep.has_value());
    const Partition delta = rep->derived("delta");
    QuotientResult Q = quotient(rep->derived_algebra, delta);
    QuotientFixture out{Q.algebra, quotient_partition(rep->derived("theta"), delta),
                        quotient_partition(rep->derived("alpha"), delta), "cli_tmp_b.alg"};
    write_algebra(out.b, out.path);
    return out;
  }();
  return qf;
}

void write_text(const std::string& path, const std::string& text) {
  FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  std::fputs(text.c_str(), f);
  std::fclose(f);
}

}  // namespace

// ===== lattice listing =====

TEST_CASE("cli: con lists the congruence lattice") {
  const RunResult r = run_cli({"con", fx("z2s2.alg")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "Con(Z2S2): 5 congruences"));
  for (const char* text : {"0|1|2|3", "0,2|1|3", "0,1|2,3", "0,2|1,3", "0,1,2,3"})
    CHECK_MESSAGE(contains(r.out, text), text);
  CHECK(contains(r.out, "modular: no"));

  const RunResult r4 = run_cli({"con", fx("z4.alg")});
  CHECK(r4.status == 0);
  CHECK(contains(r4.out, "Con(Z4): 3 congruences"));
  CHECK(contains(r4.out, "modular: yes"));
}

// ===== machine output =====

TEST_CASE("cli: machine output is deterministic and parses back exactly") {
  const std::vector<std::string> args{"--json", "--seed", "7", "con", fx("z2s2.alg")};
  const RunResult r1 = run_cli(args);
  const RunResult r2 = run_cli(args);
  CHECK(r1.status == 0);
  CHECK(r1.out == r2.out);  // byte-identical across runs

  const std::vector<json> recs = parse_machine(r1.out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["record"] == "meta");
  CHECK(recs[0]["command"] == "con");
  CHECK(recs[0]["seed"] == 7);
  CHECK(recs[0]["budget_closure"] == kClosureBudget);
  CHECK(recs[0]["budget_lattice"] == kLatticeBudget);
  CHECK(recs[0]["inputs"] == json::array({fx("z2s2.alg")}));

  CHECK(recs[1]["record"] == "lattice");
  CHECK(recs[1]["input"] == fx("z2s2.alg"));
  CHECK(recs[1]["modular"] == false);
  REQUIRE(recs[1]["congruences"].size() == 5);
  CHECK(recs[1]["congruences"][0] == "0|1|2|3");
  CHECK(recs[1]["congruences"][4] == "0,1,2,3");

  // serialize() inverts parse_machine() on real output.
  MachineLog log;
  for (const json& rec : recs) log.add(rec);
  CHECK(log.serialize() == r1.out);

  // Default mode emits no JSON records.
  const RunResult human = run_cli({"con", fx("z2s2.alg")});
  CHECK(!human.out.empty());
  CHECK(human.out[0] != '{');
}

// ===== congruence generation =====

TEST_CASE("cli: cg generates principal congruences") {
  const RunResult r = run_cli({"cg", fx("z2s2.alg"), "0,2"});
  CHECK(r.status == 0);
  CHECK(r.out == "0,2|1|3\n");

  const RunResult above = run_cli({"cg", fx("z2s2.alg"), "1,3", "--above", "0,2|1|3"});
  CHECK(above.status == 0);
  CHECK(above.out == "0,2|1,3\n");

  const RunResult bad = run_cli({"cg", fx("z2s2.alg"), "13"});
  CHECK(bad.status == 1);
  CHECK(bad.out.empty());

  const RunResult m = run_cli({"--json", "cg", fx("z2s2.alg"), "0,2"});
  const std::vector<json> recs = parse_machine(m.out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1]["record"] == "congruence");
  CHECK(recs[1]["result"] == "0,2|1|3");
}

// ===== commutator =====

TEST_CASE("cli: commutator and relative commutator") {
  const RunResult r = run_cli({"commutator", fx("z2s2.alg"), "0,1,2,3", "0,1,2,3"});
  CHECK(r.status == 0);
  CHECK(r.out == "0,1|2,3\n");  // [1,1] = beta on the fixture

  const RunResult rel = run_cli(
      {"commutator", fx("z2s2.alg"), "0,1,2,3", "0,2|1,3", "--relative", "0,2|1|3"});
  CHECK(rel.status == 0);
  CHECK(rel.out == "0,2|1,3\n");

  const RunResult abelian = run_cli({"commutator", fx("z4.alg"), "0,1,2,3", "0,1,2,3"});
  CHECK(abelian.status == 0);
  CHECK(abelian.out == "0|1|2|3\n");

  const RunResult bad = run_cli({"commutator", fx("z2s2.alg"), "0,9", "0,1,2,3"});
  CHECK(bad.status == 1);
}

// ===== centralize =====

TEST_CASE("cli: centralize exit codes reflect the answer") {
  const RunResult holds =
      run_cli({"centralize", fx("z2s2.alg"), "0,2|1,3", "0,2|1,3", "0,2|1|3"});
  CHECK(holds.status == 0);
  CHECK(contains(holds.out, "C(alpha,beta;delta) holds"));

  const RunResult fails =
      run_cli({"centralize", fx("z2s2.alg"), "0,1|2,3", "0,2|1,3", "0,2|1|3"});
  CHECK(fails.status == 2);
  CHECK(contains(fails.out, "fails; witness matrix [["));
}

// ===== annihilator =====

TEST_CASE("cli: annihilators") {
  const RunResult right = run_cli({"annihilator", fx("z2s2.alg"), "0,1,2,3"});
  CHECK(right.status == 0);
  CHECK(right.out == "0,2|1,3\n");

  const RunResult left = run_cli(
      {"annihilator", fx("z2s2.alg"), "0,2|1,3", "--side", "left", "--modulo", "0,2|1|3"});
  CHECK(left.status == 0);
  CHECK(left.out == "0,2|1,3\n");
}

// ===== pentagons, better-pentagon, pipeline, sdfail =====

TEST_CASE("cli: pentagons") {
  const RunResult r = run_cli({"pentagons", fx("z2s2.alg")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "1 pentagon(s) in Con(Z2S2)"));
  CHECK(contains(r.out, "beta=0,1|2,3"));
  CHECK(contains(r.out, "theta=0,2|1,3"));

  const RunResult none = run_cli({"pentagons", fx("z4.alg")});
  CHECK(none.status == 0);
  CHECK(contains(none.out, "0 pentagon(s)"));
}

TEST_CASE("cli: better-pentagon searches and reports") {
  const RunResult r = run_cli({"better-pentagon", fx("z2s2.alg")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "input pentagon:"));
  CHECK(contains(r.out, "all checks passed"));

  const RunResult pinned =
      run_cli({"better-pentagon", fx("z2s2.alg"), "--theta", "0,2|1,3"});
  CHECK(pinned.status == 0);
  CHECK(contains(pinned.out, "all checks passed"));

  const RunResult na = run_cli({"better-pentagon", fx("z4.alg")});
  CHECK(na.status == 2);
  CHECK(contains(na.out, "not applicable"));
}

TEST_CASE("cli: pipeline") {
  const RunResult r = run_cli({"pipeline", fx("z2s2.alg")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "provenance:"));
  CHECK(contains(r.out, "better_pentagon"));
  CHECK(contains(r.out, "all checks passed"));

  const RunResult na = run_cli({"pipeline", fx("z4.alg")});
  CHECK(na.status == 2);
  CHECK(contains(na.out, "not applicable"));

  const RunResult m = run_cli({"--json", "pipeline", fx("z2s2.alg")});
  const std::vector<json> recs = parse_machine(m.out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1]["record"] == "pipeline");
  CHECK(recs[1]["applicable"] == true);
  CHECK(recs[1]["ok"] == true);
}

TEST_CASE("cli: sdfail end to end") {
  const RunResult r = run_cli({"sdfail", fx("z2s2.alg")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "E = "));
  CHECK(contains(r.out, "all checks passed: [x,y] = 0, [x,z] = 0, [x,y v z] != 0"));

  const RunResult na = run_cli({"sdfail", fx("z4.alg")});
  CHECK(na.status == 2);
  CHECK(contains(na.out, "not applicable"));
}

// ===== herringbone and gadgets (on the written-out pipeline quotient) =====

TEST_CASE("cli: herringbone on the pipeline quotient") {
  const QuotientFixture& qf = quotient_fixture();
  const RunResult r =
      run_cli({"herringbone", qf.path, to_text(qf.theta_bar), to_text(qf.alpha_bar)});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "stabilization index:"));
  CHECK(contains(r.out, "all checks passed"));

  // Preconditions fail on the abelian fixture.
  const RunResult bad = run_cli({"herringbone", fx("z4.alg"), "0,2|1,3", "0,1,2,3"});
  CHECK(bad.status == 1);
}

TEST_CASE("cli: distributivity gadgets on the pipeline quotient") {
  const QuotientFixture& qf = quotient_fixture();
  const RunResult left =
      run_cli({"gadget-left", qf.path, to_text(qf.alpha_bar), to_text(qf.theta_bar)});
  CHECK(left.status == 0);
  CHECK(contains(left.out, "witness diagonal pair:"));
  CHECK(contains(left.out, "all checks passed"));

  const RunResult right =
      run_cli({"gadget-right", qf.path, to_text(qf.alpha_bar), to_text(qf.theta_bar)});
  CHECK(right.status == 0);
  CHECK(contains(right.out, "witness matrix (derived ids):"));
  CHECK(contains(right.out, "all checks passed"));

  // Every commutator of the abelian fixture is trivial, so no gadget applies.
  const RunResult bad = run_cli({"gadget-left", fx("z4.alg"), "0,1,2,3", "0,2|1,3"});
  CHECK(bad.status == 1);
}

TEST_CASE("cli: annihilator nonexistence on the herringbone algebra") {
  // The sd-failure algebra E has no largest congruence centralized by x.
  const std::optional<SdFailureReport> rep = semidistributivity_failure(z2s2());
  REQUIRE(rep.has_value());
  const std::string path = "cli_tmp_e.alg";
  write_algebra(rep->E, path);
  const RunResult r = run_cli({"annihilator", path, to_text(rep->x)});
  CHECK(r.status == 2);
  CHECK(contains(r.out, "no largest centralizing congruence"));
  std::remove(path.c_str());
}

// ===== free algebras and term search =====

TEST_CASE("cli: free algebra sizes and provenance terms") {
  const RunResult f3 = run_cli({"free", fx("z2s2.alg"), "3"});
  CHECK(f3.status == 0);
  CHECK(contains(f3.out, "26 elements"));

  const RunResult f2 = run_cli({"free", fx("z4.alg"), "2", "--terms"});
  CHECK(f2.status == 0);
  CHECK(contains(f2.out, "16 elements"));
  CHECK(contains(f2.out, "[0] x\n"));
  CHECK(contains(f2.out, "[15]"));

  const RunResult over = run_cli({"--budget-free", "10", "free", fx("z4.alg"), "3"});
  CHECK(over.status == 1);

  const RunResult bad_rank = run_cli({"free", fx("z4.alg"), "0"});
  CHECK(bad_rank.status != 0);
}

TEST_CASE("cli: find-term outcomes map to exit codes") {
  const RunResult found = run_cli({"find-term", fx("z4.alg"), "maltsev"});
  CHECK(found.status == 0);
  CHECK(contains(found.out, "found:"));
  CHECK(contains(found.out, " maltsev"));

  const RunResult weak = run_cli({"find-term", fx("z2s2.alg"), "weak-difference"});
  CHECK(weak.status == 0);
  CHECK(contains(weak.out, "found:"));

  const RunResult none = run_cli({"find-term", fx("z2s2.alg"), "difference"});
  CHECK(none.status == 2);
  CHECK(contains(none.out, "none: no such term operation exists"));
  CHECK(contains(none.out, "26"));

  const RunResult inconclusive =
      run_cli({"--budget-free", "5", "find-term", fx("z2s2.alg"), "maltsev"});
  CHECK(inconclusive.status == 1);
  CHECK(contains(inconclusive.out, "inconclusive: budget exhausted"));

  const RunResult bad = run_cli({"find-term", fx("z2s2.alg"), "bogus"});
  CHECK(bad.status == 1);
}

TEST_CASE("cli: classify-term") {
  const RunResult r =
      run_cli({"classify-term", fx("z4.alg"), "(add (add x (add (add y y) y)) z)"});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "kinds:"));
  CHECK(contains(r.out, " maltsev"));
  CHECK(contains(r.out, " difference"));

  const RunResult bad = run_cli({"classify-term", fx("z4.alg"), "(add x"});
  CHECK(bad.status == 1);
}

TEST_CASE("cli: taylor term checks") {
  const RunResult yes = run_cli({"taylor", fx("z2s2.alg"), "--term", "(mul x (mul y z))"});
  CHECK(yes.status == 0);
  CHECK(contains(yes.out, "Taylor term: yes"));
  CHECK(contains(yes.out, "place"));

  const RunResult no = run_cli({"taylor", fx("z4.alg"), "--term", "(add x y)"});
  CHECK(no.status == 2);
  CHECK(contains(no.out, "Taylor term: no (not idempotent)"));

  // Existence mode requires an idempotent algebra; the fixture is not one.
  const RunResult idem = run_cli({"taylor", fx("z2s2.alg")});
  CHECK(idem.status == 1);

  write_text("cli_tmp_s2.alg",
             R"({"name":"S2","size":2,"operations":)"
             R"([{"name":"meet","arity":2,"table":[0,0,0,1]}]})");
  const RunResult s2 = run_cli({"taylor", "cli_tmp_s2.alg"});
  CHECK(s2.status == 0);
  CHECK(contains(s2.out, "Taylor term exists: yes"));
  std::remove("cli_tmp_s2.alg");

  write_text("cli_tmp_p2.alg",
             R"({"name":"P2","size":2,"operations":)"
             R"([{"name":"f","arity":2,"table":[0,0,1,1]}]})");
  const RunResult p2 = run_cli({"taylor", "cli_tmp_p2.alg"});
  CHECK(p2.status == 2);
  CHECK(contains(p2.out, "Taylor term exists: no"));
  CHECK(contains(p2.out, "two-block congruence: 0|1"));
  std::remove("cli_tmp_p2.alg");
}

// ===== property suite =====

TEST_CASE("cli: check runs the property suite") {
  const RunResult all4 = run_cli({"check", fx("z4.alg")});
  CHECK(all4.status == 0);
  for (const char* id :
       {"commutativity", "left-distributivity", "right-distributivity",
        "right-semidistributivity", "right-annihilators", "relative-right-annihilators",
        "centralizer-symmetry", "centralizer-determined", "stability", "weak-stability",
        "refinement-quasiidentity"})
    CHECK_MESSAGE(contains(all4.out, std::string(id) + ": holds"), id);

  const RunResult mixed = run_cli({"check", fx("z2s2.alg")});
  CHECK(mixed.status == 2);
  CHECK(contains(mixed.out, "centralizer-symmetry: FAILS"));
  CHECK(contains(mixed.out, "witness:"));

  const RunResult one = run_cli({"check", fx("z2s2.alg"), "--property", "commutativity"});
  CHECK(one.status == 0);
  CHECK(contains(one.out,
                 "commutativity: holds (holds on this algebra (instance level); "
                 "25 tuples checked)"));

  const RunResult fails = run_cli({"check", fx("z2s2.alg"), "--property", "stability"});
  CHECK(fails.status == 2);
  CHECK(contains(fails.out, "witness: 0,1|2,3 0,2|1,3 0|1|2|3 0,2|1|3"));

  const RunResult unknown = run_cli({"check", fx("z2s2.alg"), "--property", "nope"});
  CHECK(unknown.status == 1);
}

// ===== product / quotient round trip =====

TEST_CASE("cli: product and quotient write loadable algebra files") {
  const RunResult prod =
      run_cli({"product", fx("z4.alg"), fx("z4.alg"), "--out", "cli_tmp_p.alg"});
  CHECK(prod.status == 0);
  CHECK(contains(prod.out, "wrote cli_tmp_p.alg"));

  // 15 = the number of subgroups of Z4 x Z4 (counted by order: 1 + 3 + 7 + 3
  // + 1), derived by hand.
  const RunResult pcon = run_cli({"con", "cli_tmp_p.alg"});
  CHECK(pcon.status == 0);
  CHECK(contains(pcon.out, "Con(Z4xZ4): 15 congruences"));
  std::remove("cli_tmp_p.alg");

  // theta = 0,2|1,3 has two blocks, so the quotient is a 2-element algebra.
  const RunResult quot =
      run_cli({"quotient", fx("z2s2.alg"), "0,2|1,3", "--out", "cli_tmp_q.alg"});
  CHECK(quot.status == 0);
  const FiniteAlgebra q = parse_algebra("cli_tmp_q.alg");
  CHECK(q.size == 2);
  const RunResult qcon = run_cli({"con", "cli_tmp_q.alg"});
  CHECK(qcon.status == 0);
  CHECK(contains(qcon.out, "2 congruences"));
  std::remove("cli_tmp_q.alg");

  // Without --out the algebra JSON goes to stdout.
  const RunResult dump = run_cli({"quotient", fx("z2s2.alg"), "0,2|1,3"});
  CHECK(dump.status == 0);
  const json j = json::parse(dump.out);
  CHECK(j["size"] == 2);
}

// ===== input resolution =====

TEST_CASE("cli: directory inputs and --fixture-dir resolution") {
  const RunResult dir = run_cli({"con", fixtures_dir()});
  CHECK(dir.status == 0);
  CHECK(contains(dir.out, "Con(Z2S2)"));
  CHECK(contains(dir.out, "Con(Z4)"));

  // Exit status over a directory is the per-file maximum.
  const RunResult worst = run_cli({"check", fixtures_dir()});
  CHECK(worst.status == 2);

  const RunResult bare = run_cli({"--fixture-dir", fixtures_dir(), "con", "z2s2"});
  CHECK(bare.status == 0);
  CHECK(contains(bare.out, "Con(Z2S2)"));

  const RunResult named = run_cli({"--fixture-dir", fixtures_dir(), "con", "z2s2.alg"});
  CHECK(named.status == 0);

  const RunResult missing = run_cli({"con", "no_such_file.alg"});
  CHECK(missing.status == 1);
  CHECK(missing.out.empty());

  const RunResult merr = run_cli({"--json", "con", "no_such_file.alg"});
  CHECK(merr.status == 1);
  const std::vector<json> recs = parse_machine(merr.out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1]["record"] == "error");
  CHECK(contains(recs[1]["message"].get<std::string>(), "cannot open file"));

  const RunResult usage = run_cli({});
  CHECK(usage.status != 0);
}

// ===== report-all =====

TEST_CASE("cli: report-all surveys without failing") {
  const RunResult r = run_cli({"report-all", fx("z2s2.alg")});
  CHECK(r.status == 0);  // findings are reported, not treated as failure
  CHECK(contains(r.out, "Con(Z2S2): 5 congruences"));
  CHECK(contains(r.out, "1 pentagon(s)"));
  CHECK(contains(r.out, "stability: FAILS"));

  const std::vector<std::string> args{"--json", "report-all", fx("z2s2.alg")};
  const RunResult m1 = run_cli(args);
  const RunResult m2 = run_cli(args);
  CHECK(m1.status == 0);
  CHECK(m1.out == m2.out);
  const std::vector<json> recs = parse_machine(m1.out);
  CHECK(recs.size() == 1 + 1 + 1 + 11);  // meta, lattice, pentagons, 11 properties
}
