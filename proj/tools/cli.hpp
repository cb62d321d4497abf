#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "opseller/best_response.hpp"
#include "opseller/equilibrium.hpp"

namespace opseller::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kBadInput = 2, kIoFailure = 3 };

/// Solver entry points used by the subcommands. Tests swap them out to check
/// that `verify` catches a broken solver.
struct Hooks {
  std::function<EquilibriumResult(const GameParams&, const SolverConfig&)> solver =
      [](const GameParams& p, const SolverConfig& c) { return solve_equilibrium(p, c); };
  std::function<BestResponse(Price, double, const GameParams&)> best_response =
      [](Price p, double q, const GameParams& g) { return opseller::best_response(p, q, g); };
};

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace opseller::cli
