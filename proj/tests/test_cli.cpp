#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "tsk/cli.hpp"

using namespace tsk;
using namespace fx;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome job(const std::string& command, InputKind kind, const std::string& file, const std::string& format = "json",
            std::function<void(JobSpec&)> tweak = {}) {
  JobSpec j;
  j.command = command;
  j.kind = kind;
  j.input_path = std::string(TSK_TEST_DATA) + "/" + file;
  j.format = format;
  if (tweak) tweak(j);
  std::ostringstream out, err;
  const int code = run(j, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

int binary(const std::string& args) {
  const std::string cmd = std::string(TSK_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse_input") {
  const auto square = std::get<SymmetricMap>(read_input(std::string(TSK_TEST_DATA) + "/unit3_square.phy", InputKind::metric));
  CHECK(square == unit_metric(3));
  const auto lower = std::get<SymmetricMap>(read_input(std::string(TSK_TEST_DATA) + "/unit3_lower.phy", InputKind::metric));
  CHECK(lower == unit_metric(3));

  const auto delta = std::get<Diversity>(read_input(std::string(TSK_TEST_DATA) + "/diversity3.json", InputKind::diversity));
  CHECK(delta.ground == ground(3));
  CHECK(delta(0b011) == 1);
  CHECK(delta(0b111) == Rational(3, 2));

  // omitted {1,2,3} filled with the maximum of its parts
  const auto filled = std::get<Diversity>(read_input(std::string(TSK_TEST_DATA) + "/diversity_partial.json", InputKind::diversity));
  CHECK(filled(0b111) == 3);

  const auto k = std::get<KDissimilarity>(read_input(std::string(TSK_TEST_DATA) + "/kdiss.json", InputKind::kdiss));
  CHECK(k.k == 2);
  CHECK(k.values.size() == 6);

  const auto s = std::get<WeightedSplitSystem>(read_input(std::string(TSK_TEST_DATA) + "/directed_path.json", InputKind::splitsystem));
  CHECK(s.kind == SplitKind::directed);
  auto sorted = s.splits;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<Split>{{0b001, 0b110}, {0b011, 0b100}});

  CHECK(std::get<SymmetricMap>(parse_input("2\na\nb 7/3\n", InputKind::symmetric))(0, 1) == Rational(7, 3));
}

TEST_CASE("check-tree examples") {
  const auto quartet = job("check-tree", InputKind::metric, "quartet.phy", "newick");
  CHECK(quartet.code == exit_ok);
  CHECK(quartet.out == "(a:1,b:1,(c:1,d:1):1);\n");
  for (const char* leaf : {"a:", "b:", "c:", "d:"}) CHECK(count(quartet.out, leaf) == 1);

  const auto cycle = job("check-tree", InputKind::metric, "four_cycle.json", "newick");
  CHECK(cycle.code == exit_ok);
  CHECK(cycle.out == "not a tree\n");
  CHECK(job("check-tree", InputKind::metric, "four_cycle.json").out.find("\"tree\": false") != std::string::npos);

  const auto div = job("check-tree", InputKind::diversity, "diversity3.json", "newick");
  CHECK(div.out == "(1:1/2,2:1/2,3:1/2);\n");
  CHECK(job("check-tree", InputKind::diversity, "diversity_partial.json", "newick").out == "not a tree\n");

  const auto real = job("check-tree", InputKind::directed, "directed_chain.json", "dot");
  CHECK(real.code == exit_ok);
  CHECK(count(real.out, " -> ") == 2);
  CHECK(real.out == job("check-tree", InputKind::splitsystem, "directed_path.json", "dot").out);
}

TEST_CASE("verify examples") {
  const auto eq = job("verify", InputKind::splitsystem, "two_splits.json");
  CHECK(eq.code == exit_ok);
  CHECK(eq.out.find("\"ok\": true") != std::string::npos);
  CHECK(job("verify", InputKind::metric, "quartet.phy").code == exit_ok);
  for (const auto& [kind, file] : std::vector<std::pair<InputKind, std::string>>{
           {InputKind::metric, "quartet.phy"},
           {InputKind::metric, "four_cycle.json"},
           {InputKind::diversity, "diversity3.json"},
           {InputKind::diversity, "diversity_partial.json"},
           {InputKind::kdiss, "kdiss.json"},
           {InputKind::splitsystem, "directed_path.json"},
           {InputKind::splitsystem, "two_splits.json"}}) {
    CAPTURE(file);
    CHECK(job("verify", kind, file, "json", [](JobSpec& j) { j.check = "theorem"; }).code == exit_ok);
  }
  CHECK(job("verify", InputKind::directed, "directed_chain.json", "json", [](JobSpec& j) {
          j.check = "theorem";
          j.bar = true;
        }).code == exit_ok);
}

TEST_CASE("exports") {
  const auto star = job("compute", InputKind::metric, "unit3_lower.phy", "dot");
  CHECK(star.code == exit_ok);
  CHECK(count(star.out, "[label=") == 4);
  CHECK(count(star.out, " -- ") == 3);
  CHECK(count(star.out, "len=\"1/2\"") == 3);
  CHECK(star.out.find("~") == std::string::npos);
  const auto approx = job("compute", InputKind::metric, "unit3_lower.phy", "dot", [](JobSpec& j) { j.approx = true; });
  CHECK(approx.out.find("0.5") != std::string::npos);
  CHECK(job("compute", InputKind::metric, "unit3_lower.phy", "json", [](JobSpec& j) { j.approx = true; }).out ==
        job("compute", InputKind::metric, "unit3_lower.phy").out);

  TightSpan empty;
  empty.name = "T_D";
  CHECK(to_dot(empty) == "graph \"T_D\" {\n}\n");

  const auto dec = job("decompose", InputKind::metric, "unit3_lower.phy");
  CHECK(dec.code == exit_ok);
  const auto j = nlohmann::json::parse(dec.out);
  CHECK(j["alpha"] == nlohmann::json{{"{1,2}|{3}", "1/2"}, {"{1,3}|{2}", "1/2"}, {"{1}|{2,3}", "1/2"}});

  const auto splits = job("splits", InputKind::metric, "unit3_lower.phy");
  CHECK(nlohmann::json::parse(splits.out)["splits"].size() == 6);
  CHECK(nlohmann::json::parse(splits.out)["compatible"] ==
        nlohmann::json::parse(job("splits", InputKind::metric, "unit3_lower.phy", "json", [](JobSpec& s) {
                                s.method = CompatibilityMethod::geometric;
                              }).out)["compatible"]);

  // keys sorted, repeated runs byte-identical
  const auto span = job("compute", InputKind::metric, "quartet.phy");
  CHECK(span.out == job("compute", InputKind::metric, "quartet.phy").out);
  CHECK(span.out.find("\"dimension\"") < span.out.find("\"vertices\""));
}

TEST_CASE("error paths") {
  auto expect = [](const Outcome& o, int code, const std::string& needle) {
    CAPTURE(o.err);
    CHECK(o.code == code);
    CHECK(o.err.find(needle) != std::string::npos);
  };
  expect(job("compute", InputKind::metric, "asymmetric.phy"), exit_validation, "D(1,2) = 1 but D(2,1) = 2");
  expect(job("compute", InputKind::metric, "triangle_violation.json"), exit_validation, "triangle inequality");
  expect(job("compute", InputKind::metric, "bad_rational.phy"), exit_validation, "line 2");
  expect(job("compute", InputKind::metric, "short_row.phy"), exit_validation, "line 3");
  expect(job("compute", InputKind::metric, "bad_json.json"), exit_validation, "invalid JSON");
  expect(job("compute", InputKind::metric, "missing_pair.json"), exit_validation, "missing pair {b,c}");
  expect(job("compute", InputKind::diversity, "diversity_missing.json"), exit_validation, "missing subset {1,2,3}");
  expect(job("compute", InputKind::diversity, "diversity_d1.json"), exit_validation, "(D1)");
  expect(job("compute", InputKind::metric, "kind_mismatch.json"), exit_validation, "declares kind");
  expect(job("compute", InputKind::directed, "quartet.phy"), exit_validation, "needs JSON");
  expect(job("compute", InputKind::metric, "nonexistent.json"), exit_validation, "cannot read");
  expect(job("compute", InputKind::metric, "quartet.phy", "newick"), exit_validation, "not available");
  expect(job("compute", InputKind::metric, "quartet.phy", "svg"), exit_validation, "unknown output format");
  expect(job("compute", InputKind::metric, "four_cycle.json", "dot"), exit_validation, "dimension at most 1");
  expect(job("compute", InputKind::splitsystem, "two_splits.json"), exit_validation, "split systems");
  expect(job("transmogrify", InputKind::metric, "quartet.phy"), exit_validation, "unknown command");
  expect(job("check-tree", InputKind::directed, "directed_chain.json", "newick"), exit_validation, "not available");
  expect(job("check-tree", InputKind::splitsystem, "partial_nonfull.json"), exit_validation, "full splits");
  expect(job("verify", InputKind::metric, "quartet.phy", "json", [](JobSpec& j) { j.check = "magic"; }), exit_validation,
         "unknown check");
  expect(job("verify", InputKind::metric, "quartet.phy", "json", [](JobSpec& j) { j.check = "tight-span-equal"; }),
         exit_validation, "needs --kind splitsystem");
  expect(job("verify", InputKind::metric, "quartet.phy", "dot"), exit_validation, "not available");
  expect(job("compute", InputKind::metric, "quartet.phy", "json", [](JobSpec& j) { j.cap = 0; }), exit_validation, "--cap");
  expect(job("compute", InputKind::metric, "octahedron6.json", "json", [](JobSpec& j) { j.cap = 4; }), exit_cap,
         "enumeration cap exceeded");
  expect(job("verify", InputKind::splitsystem, "five_splits.json"), exit_cap, "enumeration cap exceeded");

  std::ostringstream err;
  CHECK(report_error(std::make_exception_ptr(InvariantFailure("broken")), err) == exit_invariant);
  CHECK(err.str() == "internal error: broken\n");
  CHECK(report_error(std::make_exception_ptr(std::runtime_error("odd")), err) == exit_invariant);
  CHECK(report_error(std::make_exception_ptr(EnumerationCapExceeded(20, 16)), err) == exit_cap);
  CHECK(report_error(std::make_exception_ptr(std::invalid_argument("bad")), err) == exit_validation);
}

TEST_CASE("binary exit codes") {
  const std::string data = TSK_TEST_DATA;
  CHECK(binary("check-tree --in " + data + "/quartet.phy --out newick") == 0);
  CHECK(binary("check-tree --in " + data + "/four_cycle.json --out newick") == 0);
  CHECK(binary("verify --kind splitsystem --in " + data + "/two_splits.json") == 0);
  CHECK(binary("compute --in " + data + "/asymmetric.phy") == 2);
  CHECK(binary("compute --in " + data + "/octahedron6.json --cap 4") == 3);
  CHECK(binary("compute --kind wobbly --in " + data + "/quartet.phy") == 2);
  CHECK(binary("splits --in " + data + "/quartet.phy --method sideways") == 2);
  CHECK(binary("compute --bogus --in " + data + "/quartet.phy") == 2);
  CHECK(binary("compute") == 2);
  CHECK(binary("--help") == 0);
}
