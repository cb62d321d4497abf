#pragma once

// Brute-force verifiers. They search uniform grids (plus the analytic
// breakpoints p0, p*_I, p_M, q_dagger, q_ddagger) using only the demand and
// utility primitives, never the closed-form strategy logic.

#include <cstdint>

#include "opseller/best_response.hpp"
#include "opseller/equilibrium.hpp"
#include "opseller/game.hpp"

namespace opseller {

enum class Execution { Serial, Parallel };

struct OracleConfig {
  int price_points = 1000;     // grid size for I's price and for M's price
  int quantity_points = 1000;  // grid size for M's inventory
  bool include_abstain = true;

  void validate() const;
};

/// Grid search over I's price with q_I set to I's demand at each price.
BestResponse oracle_best_response(Price p_M, double q_M, const GameParams& params,
                                  const OracleConfig& cfg = {});

/// Nested grid search over (p_M, q_M), each cell scored with
/// oracle_best_response. Rows over p_M are independent; the reduction runs in
/// fixed row order, so both execution modes return identical results.
EquilibriumResult oracle_equilibrium(const GameParams& params, const OracleConfig& cfg = {},
                                     Execution exec = Execution::Parallel);

struct DiscretizationBound {
  double price_term = 0.0;
  double quantity_term = 0.0;

  [[nodiscard]] double total() const { return price_term + quantity_term; }
};

/// Lipschitz-style bound on how far a grid optimum can fall below the
/// continuum optimum. Each term is (Lipschitz coefficient) x (2 theta / points),
/// which covers one full grid cell and halves exactly when the point count
/// doubles.
DiscretizationBound discretization_terms(const GameParams& params, const OracleConfig& cfg);

inline double discretization_bound(const GameParams& params, const OracleConfig& cfg) {
  return discretization_terms(params, cfg).total();
}

/// True when (p_M, q_M) lies within `width` of a strategy boundary of I:
/// p0, p*_I, q_dagger(p_M) or q_ddagger(p_M).
bool near_threshold(double p_M, double q_M, const GameParams& params, double width);

}  // namespace opseller
