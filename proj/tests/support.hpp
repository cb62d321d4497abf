#pragma once

// Test-local reference computations. They are written from the demand curve
// up and share no code with the library beyond the parameter struct.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "opseller/game.hpp"

namespace testing {

using opseller::GameParams;
using opseller::Rationing;

inline double Q(double p, const GameParams& g) { return std::clamp(g.theta - p, 0.0, g.theta); }

/// Demand left at p_high after q_low units sold at p_low.
inline double residual(double p_high, double q_low, double p_low, const GameParams& g) {
  q_low = std::min(q_low, Q(p_low, g));
  if (g.rationing == Rationing::Intensity) return std::max(Q(p_high, g) - g.gamma * q_low, 0.0);
  const double base = Q(p_low, g);
  if (base <= 0.0) return Q(p_high, g);
  return std::max(Q(p_high, g) * (1.0 - g.gamma * q_low / base), 0.0);
}

struct Reply {
  double price = 0.0;
  double demand = 0.0;
  double utility = 0.0;
  bool sells = false;
};

/// I's utility at price p when the operator plays (p_M, q_M); m_abstains
/// removes the operator from the market.
inline Reply independent_at(double p, bool m_abstains, double p_M, double q_M, const GameParams& g) {
  double d = 0.0;
  if (m_abstains || p <= p_M) {
    d = Q(p, g);
  } else {
    d = residual(p, q_M, p_M, g);
  }
  return {p, d, ((1.0 - g.alpha) * p - g.c_I) * d, d > 0.0};
}

/// Dense scan of I's price; returns the best selling price, or sells=false
/// when no price earns a nonnegative utility on positive demand.
inline Reply independent_scan(bool m_abstains, double p_M, double q_M, const GameParams& g, int points) {
  std::vector<double> prices;
  for (int i = 0; i < points; ++i) prices.push_back(g.theta * i / (points - 1));
  if (!m_abstains) prices.push_back(p_M);
  Reply best;
  best.utility = -1e300;
  for (double p : prices) {
    if (p > g.theta) continue;
    const Reply r = independent_at(p, m_abstains, p_M, q_M, g);
    if (r.demand > 0.0 && r.utility > best.utility) best = r;
  }
  if (best.utility < 0.0) return Reply{};
  return best;
}

/// Operator's utility given its action and I's price/quantity choice.
inline double operator_utility(double p_M, double q_M, const Reply& i, const GameParams& g) {
  double m_sold = 0.0;
  if (!i.sells) {
    m_sold = std::min(q_M, Q(p_M, g));
  } else if (p_M < i.price) {
    m_sold = std::min(q_M, Q(p_M, g));
  } else {
    m_sold = std::min(q_M, residual(p_M, i.demand, i.price, g));
  }
  const double i_sold = i.sells ? i.demand : 0.0;
  return (p_M + g.k) * m_sold + (g.alpha * (i.sells ? i.price : 0.0) + g.k) * i_sold - g.c_M * q_M;
}

inline GameParams random_params(std::mt19937_64& rng, bool allow_proportional = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GameParams g;
  g.theta = 10.0;
  g.alpha = 0.05 + 0.9 * u(rng);
  g.k = 4.0 * u(rng);
  g.c_M = 8.0 * u(rng);
  g.c_I = 6.0 * u(rng);
  const double gammas[] = {0.25, 0.5, 1.0};
  g.gamma = gammas[rng() % 3];
  g.rationing = allow_proportional && (rng() % 2) ? Rationing::Proportional : Rationing::Intensity;
  return g;
}

}  // namespace testing
