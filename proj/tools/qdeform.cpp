#include "qdeform/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  using namespace qdeform;
  CLI::App app{"Deforming maps between classical and q-deformed Weyl/Clifford algebras, checked numerically"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> tols;
  int cutoff = -1;
  int margin = -1;
  std::string stats;

  std::string suites;
  for (const auto& s : suite_registry()) suites += "\n  " + s.name + "  " + s.summary;
  auto* verify = app.add_subcommand("verify", "Run a verification suite. Suites:" + suites);
  verify->add_option("suite", config.suite, "Suite name")->required();
  verify->add_option("--q", config.q, "Deformation parameter: re, re+imi, imi, root:p, phase:n/d, exp:z (repeatable)");
  verify->add_option("--cutoff", cutoff, "Maximum total occupation");
  verify->add_option("--margin", margin, "Interior margin");
  verify->add_option("--stats", stats, "bose or fermi")->check(CLI::IsMember({"bose", "fermi"}));
  verify->add_option("--tol", tols, "Tolerance override PREFIX=VAL (repeatable)");
  verify->add_option("--format", config.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", config.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cutoff >= 0) config.cutoff = cutoff;
    else if (verify->count("--cutoff") > 0) throw UsageError("--cutoff must be nonnegative");
    if (margin >= 0) config.margin = margin;
    else if (verify->count("--margin") > 0) throw UsageError("--margin must be nonnegative");
    if (!stats.empty()) config.stats = stats == "bose" ? Statistics::Bose : Statistics::Fermi;
    for (const auto& t : tols) config.tolerances.insert(parse_tolerance(t));
    if (const auto seed = parse_seed(std::getenv("QDEFORM_SEED"))) config.seed = *seed;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return run_and_write(config, std::cout, std::cerr);
}
