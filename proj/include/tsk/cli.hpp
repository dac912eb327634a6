#pragma once

#include <exception>
#include <optional>
#include <ostream>
#include <string>

#include "tsk/io.hpp"

namespace tsk {

enum ExitCode : int { exit_ok = 0, exit_validation = 2, exit_cap = 3, exit_invariant = 4 };

struct JobSpec {
  std::string command;              // compute | check-tree | splits | decompose | verify
  InputKind kind = InputKind::metric;
  std::string input_path;
  std::string format = "json";      // json | dot | newick
  std::optional<int> cap;
  CompatibilityMethod method = CompatibilityMethod::combinatorial;
  bool bar = false;                 // directed: Θ_D over B̄; diversity: T̄(δ) over A(𝒫⁰(Y))
  bool approx = false;              // decimal annotations in DOT labels
  std::string check;                // verify: duality | tight-span-equal | theorem
};

/// Exit code for an exception escaping a job; the message goes to `err`.
int report_error(std::exception_ptr error, std::ostream& err);

/// Writes the artifact to `out` and diagnostics to `err`; never throws.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace tsk
