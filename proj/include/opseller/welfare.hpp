#pragma once

// Consumer surplus and total welfare under intensity rationing with perfect
// substitutes, where buyers are served in descending order of valuation.

#include "opseller/equilibrium.hpp"
#include "opseller/game.hpp"

namespace opseller {

/// True for the one configuration where consumer surplus is well defined here
/// (intensity rationing, gamma = 1).
bool consumer_surplus_defined(const GameParams& params);

/// Consumer surplus when both sellers play their actions. Units sold at the
/// lower price go to the highest valuations; the higher-priced seller's units
/// go to the next buyers, whose valuations are at least the higher price.
/// Throws UnsupportedConfiguration unless consumer_surplus_defined(params).
double consumer_surplus(const Action& action_M, const Action& action_I, const GameParams& params);

struct WelfareReport {
  double cs = 0.0;
  double u_M = 0.0;
  double u_I = 0.0;
  double welfare = 0.0;           // cs + u_M + u_I
  double cs_baseline = 0.0;       // I as sole seller at its sole-seller price
  double u_I_baseline = 0.0;
  double u_M_baseline = 0.0;      // referral fee and experience term only
  double welfare_baseline = 0.0;
};

WelfareReport welfare_report(const EquilibriumResult& eq, const GameParams& params);

struct SurplusTransfer {
  double delta_ps = 0.0;  // change in I's utility relative to the sole-seller benchmark
  double delta_cs = 0.0;
  bool holds = false;     // -delta_ps <= delta_cs (+1e-9)
};

/// Compares I's loss against the consumers' gain when I best-responds to (p_M, q_M).
SurplusTransfer surplus_transfer_check(double p_M, double q_M, const GameParams& params);

}  // namespace opseller
