#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtfunnel/outer.hpp"

namespace qtf {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitConverged = 0,
  kExitInfeasible = 2,
  kExitIterationLimit = 3,
  kExitBreakdown = 4,
  kExitUsage = 64,
};

int exit_code(SolveStatus status);

/// JSON report: config echo, final (x, λ, z), status, E0 and wall time.
nlohmann::json report_json(const std::string& problem_name,
                           const OuterConfig& cfg, const SolveReport& report);

/// One-line human summary.
std::string summary_line(const SolveReport& report);

/// Entry point of the qtfunnel executable. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qtf
