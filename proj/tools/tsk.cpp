#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "tsk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tsk: exact tight spans, splits and trees"};
  tsk::JobSpec job;
  std::string kind = "metric", method = "combinatorial";
  int cap = 0;
  app.add_option("command", job.command, "compute | check-tree | splits | decompose | verify")->required();
  app.add_option("--kind", kind, "metric | distance | symmetric | directed | diversity | kdiss | splitsystem");
  app.add_option("--in", job.input_path, "input file")->required();
  app.add_option("--out", job.format, "json | dot | newick");
  auto* cap_opt = app.add_option("--cap", cap, "dimension cap for full enumeration");
  app.add_option("--method", method, "geometric | combinatorial");
  app.add_flag("--bar", job.bar, "directed: Theta_D over Bbar; diversity: Tbar over A(P0(Y))");
  app.add_flag("--approx", job.approx, "decimal annotations in DOT labels");
  app.add_option("--check", job.check, "verify: duality | tight-span-equal | theorem");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tsk::exit_validation;
  }
  if (*cap_opt) job.cap = cap;
  if (method == "geometric") job.method = tsk::CompatibilityMethod::geometric;
  else if (method != "combinatorial") {
    std::cerr << "error: unknown method '" << method << "'\n";
    return tsk::exit_validation;
  }
  try {
    job.kind = tsk::parse_input_kind(kind);
  } catch (const tsk::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tsk::exit_validation;
  }
  return tsk::run(job, std::cout, std::cerr);
}
