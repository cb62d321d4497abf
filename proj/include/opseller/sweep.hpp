#pragma once

// One- and two-axis parameter sweeps of the equilibrium (phase diagrams, fee curves,
// welfare grids) and their CSV serialization.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "opseller/equilibrium.hpp"
#include "opseller/game.hpp"
#include "opseller/oracle.hpp"

namespace opseller {

enum class SweepParam { c_M, c_I, alpha, k, theta, gamma };

/// Accepts c_M/cm, c_I/ci, alpha, k, theta, gamma.
SweepParam parse_sweep_param(const std::string& name);
std::string to_string(SweepParam p);

struct Axis {
  SweepParam param = SweepParam::c_I;
  double min = 0.0;
  double max = 0.0;
  int points = 2;

  [[nodiscard]] double at(int i) const;

  /// Parses "name:min:max:points", e.g. "ci:0:10:200".
  static Axis parse(const std::string& text);
};

inline constexpr const char* kSweepColumns[] = {"c_M", "c_I", "alpha",   "k",   "theta", "gamma",
                                                "rationing", "regime", "p_M", "q_M", "p_I",   "q_I",
                                                "u_M", "u_I", "cs",     "welfare"};

struct SweepSpec {
  Axis x;
  std::optional<Axis> y;  // absent for a one-dimensional sweep
  GameParams fixed;
  SolverConfig solver;
  std::vector<std::string> columns;  // empty = every column in kSweepColumns order

  /// Point counts >= 2, distinct axes, every cell's parameters valid, known columns.
  void validate() const;
};

struct SweepCell {
  GameParams params;
  EquilibriumResult result;
};

/// Cells in row-major order over (y, x): y outer, x inner.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, Execution exec = Execution::Parallel);

enum class Precision { Short, Full };

/// Number cell: %.6g or %.17g; abstain prices print as "abstain".
std::string format_number(double v, Precision precision);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepCell>& cells,
                     Precision precision = Precision::Short);

}  // namespace opseller
