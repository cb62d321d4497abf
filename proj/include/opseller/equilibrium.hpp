#pragma once

// Operator's optimal action and the subgame-perfect equilibrium.
//
// For a fixed operator price only a handful of inventories can be optimal:
// none, the smallest stock that makes I compete (q_dagger), the largest stock
// that still lets I wait (q_dagger minus an infinitesimal), or the full demand
// Q(p_M) when p_M is below I's break-even price. With imperfect substitutes M
// can also sell beside a competing I, which adds the residual left after I's
// sales as a candidate. The equilibrium search runs a
// 1-D price optimization per candidate family and keeps the best.

#include <optional>
#include <string_view>

#include "opseller/best_response.hpp"
#include "opseller/game.hpp"

namespace opseller {

struct SolverConfig {
  double epsilon_report = 1e-6;  // reported offset below q_dagger for the wait candidate
  int price_grid = 512;          // coarse samples per candidate family
  double refine_tol = 1e-10;     // golden-section bracket width at exit
  int safety_grid = 256;         // extra q_M scan at the chosen price; 0 disables

  void validate() const;
};

enum class Regime { InduceAbstain, InduceCompete, InduceWait, MOAbstains };

/// snake_case tag used in CSV and JSON output.
std::string_view to_string(Regime r);

struct EquilibriumResult {
  Action action_M;
  BestResponse response_I;
  Regime regime = Regime::MOAbstains;
  double u_M = 0.0;
  double u_I = 0.0;
  std::optional<double> cs;       // empty when consumer surplus is undefined
  std::optional<double> welfare;  // for the rationing rule in use
};

/// M's utility from (p_M, q_M) when I best-responds.
double u_M_given_br(Price p_M, double q_M, const GameParams& params);

/// M's utility from (p_M, q_M) with I waiting it out at its wait price.
/// Continuous in q_M; its value at q_dagger is the left limit of the wait
/// branch that u_M_given_br jumps away from.
double u_M_wait_branch(double p_M, double q_M, const GameParams& params);

enum class QuantityCandidate { None, CompeteThreshold, CompeteResidual, WaitLimit, FullDemand, SafetyGrid };

struct QuantityChoice {
  double q_M = 0.0;        // reported inventory
  double utility = 0.0;    // score used for the argmax
  QuantityCandidate source = QuantityCandidate::None;
};

/// Optimal operator inventory at a fixed price.
QuantityChoice optimal_q_M(double p_M, const GameParams& params, const SolverConfig& cfg = {});

/// Subgame-perfect equilibrium of the game.
EquilibriumResult solve_equilibrium(const GameParams& params, const SolverConfig& cfg = {});

Regime classify_regime(const Action& action_M, const BestResponse& response_I);

inline Regime classify_regime(const EquilibriumResult& result) {
  return classify_regime(result.action_M, result.response_I);
}

/// Builds a full result (best response, utilities, regime, surplus) for an
/// operator action.
EquilibriumResult evaluate_operator_action(const Action& action_M, const GameParams& params);

}  // namespace opseller
