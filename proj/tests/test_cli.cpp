#include "qdeform/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace qdeform;

TEST_CASE("q specs") {
  CHECK(parse_q_spec("0.7").q() == cplx(0.7));
  CHECK(std::abs(parse_q_spec("1+0.5i").q() - cplx(1.0, 0.5)) < 1e-15);
  CHECK(std::abs(parse_q_spec("1-0.5i").q() - cplx(1.0, -0.5)) < 1e-15);
  CHECK(std::abs(parse_q_spec("0.3i").q() - cplx(0.0, 0.3)) < 1e-15);
  CHECK(std::abs(parse_q_spec("i").q() - cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(parse_q_spec("1e-1+2E-1i").q() - cplx(0.1, 0.2)) < 1e-15);
  CHECK(parse_q_spec("root:3").describe() == "root:3");
  CHECK(std::abs(parse_q_spec("root:3").q() - std::polar(1.0, M_PI / 3)) < 1e-15);
  CHECK(parse_q_spec("phase:1/4").regime() == Regime::RootOfUnity);
  CHECK(std::abs(parse_q_spec("exp:0.1i").q() - std::exp(cplx(0.0, 0.1))) < 1e-15);
  CHECK(std::abs(parse_q_spec("exp:0.3").q() - std::exp(0.3)) < 1e-14);
  for (const char* bad : {"", "abc", "0", "root:1", "root:x", "phase:1/0", "1+", "0.7j", "exp:"})
    CHECK_THROWS_AS(parse_q_spec(bad), UsageError);
}

TEST_CASE("seed and tolerance parsing") {
  CHECK(parse_seed("42") == 42u);
  CHECK_FALSE(parse_seed(nullptr));
  CHECK_THROWS_AS(parse_seed("x42"), UsageError);
  const auto [k, v] = parse_tolerance("qcr.ann=1e-8");
  CHECK(k == "qcr.ann");
  CHECK(v == 1e-8);
  CHECK_THROWS_AS(parse_tolerance("qcr"), UsageError);
  CHECK_THROWS_AS(parse_tolerance("qcr=-1"), UsageError);
  CHECK_THROWS_AS(parse_tolerance("=1"), UsageError);
}

TEST_CASE("registry lists the suites") {
  std::vector<std::string> names;
  for (const auto& s : suite_registry()) names.push_back(s.name);
  for (const char* n : {"proto1d", "sl2-weyl", "sl2-clifford", "sl2-universal-equivalence", "root-unity", "pw-reps", "all"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("sl2-weyl run: two q values give two blocks, all passing") {
  RunConfig c;
  c.suite = "sl2-weyl";
  c.q = {"1.4", "0.7"};
  c.cutoff = 8;
  const auto r = run(c);
  REQUIRE(r.suites.size() == 2);
  CHECK(r.suites[0].config.at("q") == "1.4");
  CHECK(r.suites[1].config.at("q") == "0.7");
  CHECK(r.suites[0].checks.size() >= 12);
  CHECK(r.passed());
  CHECK(exit_code(r) == 0);
}

TEST_CASE("JSON round trip") {
  RunConfig c;
  c.suite = "pw-reps";
  const auto r = run(c);
  const auto text = to_json(r);
  const auto back = from_json(text);
  CHECK(back == r);
  CHECK(to_json(back) == text);
}

TEST_CASE("runs are deterministic") {
  RunConfig c;
  c.suite = "sl2-hopf";
  c.q = {"1.4"};
  CHECK(to_json(run(c)) == to_json(run(c)));
  auto c2 = c;
  c2.seed = c.seed + 1;
  // the seed only moves the negative controls
  CHECK(to_json(run(c2)) != to_json(run(c)));
  CHECK(run(c2).passed());
}

TEST_CASE("tolerance override can fail a suite") {
  RunConfig c;
  c.suite = "sl2-weyl";
  c.q = {"1.4"};
  c.tolerances = {{"qcr", 1e-30}};
  const auto r = run(c);
  CHECK_FALSE(r.passed());
  CHECK(exit_code(r) == 1);
}

TEST_CASE("exit codes from run_and_write") {
  std::ostringstream out, err;
  RunConfig c;
  c.suite = "nope";
  CHECK(run_and_write(c, out, err) == 2);
  c.suite = "sl2-clifford";
  c.stats = Statistics::Bose;
  CHECK(run_and_write(c, out, err) == 2);
  c.stats.reset();
  c.q = {"bad"};
  CHECK(run_and_write(c, out, err) == 2);
  c.suite = "sl2-weyl";
  c.q = {"1e-200"};
  CHECK(run_and_write(c, out, err) == 3);
  c = RunConfig{};
  c.suite = "all";
  c.cutoff = 4;
  CHECK(run_and_write(c, out, err) == 2);
  c = RunConfig{};
  c.suite = "sl2-weyl";
  c.out = "/nonexistent/dir/report.json";
  CHECK(run_and_write(c, out, err) == 2);
}

TEST_CASE("text output names every check") {
  RunConfig c;
  c.suite = "proto1d";
  c.format = "text";
  const auto r = run(c);
  const auto text = to_text(r);
  for (const auto& s : r.suites)
    for (const auto& k : s.checks) CHECK(text.find(k.id) != std::string::npos);
}
