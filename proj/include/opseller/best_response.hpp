#pragma once

// Closed-form best response of the independent seller to any operator action,
// for subtractive (intensity) and multiplicative (proportional) residual demand.

#include <optional>
#include <string_view>

#include "opseller/game.hpp"

namespace opseller {

struct KeyPrices {
  double p0 = 0.0;    // I's break-even price; +inf when alpha = 1
  Price p_star_I;     // I's sole-seller price; abstain when p0 > theta
  Price p_star_M;     // M's monopoly price; abstain when c_M > theta + k

  /// True when I cannot sell profitably at any price (p0 > theta).
  [[nodiscard]] bool independent_priced_out(double theta) const { return p0 > theta; }
};

KeyPrices key_prices(const GameParams& params);

/// Inventory thresholds at a given operator price.
///
/// q_dagger separates Wait (below) from Compete (at or above) for p_M in
/// [p0, p*_I]; it is absent outside that interval. q_ddagger separates Wait
/// from Abstain for p_M < p0. Both are reported unclamped and may exceed
/// Q(p_M) (or be +inf) when gamma < 1, in which case the upper regime is
/// unreachable. p_wait is I's wait-it-out price for the q_M passed in.
struct Thresholds {
  std::optional<double> q_dagger;
  double q_ddagger = 0.0;
  double p_wait = 0.0;
};

/// Requires p0 <= theta and p_M in [0, theta].
Thresholds thresholds(double p_M, const GameParams& params, double q_M = 0.0);

/// I's optimal price when facing the residual demand left by q_M units.
double wait_price(double q_M, const GameParams& params);

enum class Strategy { Compete, Wait, Abstain };

std::string_view to_string(Strategy s);

struct BestResponse {
  Strategy strategy = Strategy::Abstain;
  Action action;
  double utility = 0.0;
  bool demonopolized = false;
};

/// I's best response to the operator playing (p_M, q_M).
///
/// Ties resolve to Compete over Wait and to selling at zero utility over
/// Abstain. The reported quantity is I's demand at the chosen price; at
/// p_I = p0 this is one of several maximizers.
BestResponse best_response(Price p_M, double q_M, const GameParams& params);

inline BestResponse best_response(const Action& action_M, const GameParams& params) {
  return best_response(action_M.price, action_M.quantity, params);
}

/// I's action at a given price with quantity equal to its demand there.
Action independent_action_at(double p_I, const Action& action_M, const GameParams& params);

}  // namespace opseller
