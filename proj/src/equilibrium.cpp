#include "opseller/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "opseller/line_search.hpp"
#include "opseller/welfare.hpp"

namespace opseller {

namespace {

struct Candidate {
  Action action;
  double score = -kInf;
};

// Replaces `best` only on a strict improvement, so earlier candidates win ties.
void keep_better(Candidate& best, const Candidate& c) {
  if (c.score > best.score) best = c;
}

// Demand left for M at p_M after I competes at p_I <= p_M and serves Q(p_I).
// Zero for perfect substitutes; with gamma < 1 M can still sell here.
double residual_after_compete(double p_M, double p_I, const GameParams& params) {
  return residual_demand(p_M, demand(p_I, params), p_I, params);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon_report > 0.0)) throw InvalidInput("solver: epsilon_report must be > 0");
  if (price_grid < 16) throw InvalidInput("solver: price_grid must be >= 16");
  if (!(refine_tol > 0.0)) throw InvalidInput("solver: refine_tol must be > 0");
  if (safety_grid < 0) throw InvalidInput("solver: safety_grid must be >= 0");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::InduceAbstain: return "induce_abstain";
    case Regime::InduceCompete: return "induce_compete";
    case Regime::InduceWait: return "induce_wait";
    case Regime::MOAbstains: return "mo_abstains";
  }
  return "unknown";
}

double u_M_given_br(Price p_M, double q_M, const GameParams& params) {
  const Action action_M{p_M, q_M};
  const BestResponse br = best_response(action_M, params);
  return utilities(action_M, br.action, params).u_M;
}

double u_M_wait_branch(double p_M, double q_M, const GameParams& params) {
  const double sold_M = std::min(q_M, demand(p_M, params));
  const double p_wait = wait_price(sold_M, params);
  const double residual = residual_demand(p_wait, sold_M, p_M, params);
  return (p_M + params.k) * sold_M - params.c_M * q_M + (params.alpha * p_wait + params.k) * residual;
}

QuantityChoice optimal_q_M(double p_M, const GameParams& params, const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  const Price price = Price::at(p_M);
  const double cap = demand(p_M, params);
  const KeyPrices kp = key_prices(params);

  auto score = [&](double q) { return u_M_given_br(price, q, params); };

  QuantityChoice best{0.0, score(0.0), QuantityCandidate::None};
  auto offer = [&](double q, double u, QuantityCandidate source) {
    if (u > best.utility) best = {q, u, source};
  };

  const bool priced_out = kp.independent_priced_out(params.theta);
  if (priced_out || p_M < kp.p0) {
    // Priority order for ties: full demand before staying out.
    const QuantityChoice none = best;
    best = {cap, score(cap), QuantityCandidate::FullDemand};
    if (none.utility > best.utility) best = none;
  } else if (p_M < kp.p_star_I.value()) {
    const double q_dagger = *thresholds(p_M, params).q_dagger;
    const QuantityChoice none = best;
    if (q_dagger <= cap) {
      best = {q_dagger, score(q_dagger), QuantityCandidate::CompeteThreshold};
      const double leftover = residual_after_compete(p_M, p_M, params);
      if (leftover > q_dagger) offer(leftover, score(leftover), QuantityCandidate::CompeteResidual);
      if (q_dagger > cfg.epsilon_report) {
        offer(q_dagger - cfg.epsilon_report, u_M_wait_branch(p_M, q_dagger, params),
              QuantityCandidate::WaitLimit);
      }
    } else {
      // I waits for every feasible stock; the wait branch is convex in q_M.
      best = {cap, score(cap), QuantityCandidate::FullDemand};
    }
    if (none.utility > best.utility) best = none;
  } else {
    const double leftover = residual_after_compete(p_M, kp.p_star_I.value(), params);
    if (leftover > 0.0) offer(leftover, score(leftover), QuantityCandidate::CompeteResidual);
  }

  if (cfg.safety_grid > 0 && cap > 0.0) {
    for (int i = 1; i <= cfg.safety_grid; ++i) {
      const double q = cap * static_cast<double>(i) / static_cast<double>(cfg.safety_grid);
      offer(q, score(q), QuantityCandidate::SafetyGrid);
    }
  }
  return best;
}

Regime classify_regime(const Action& action_M, const BestResponse& response_I) {
  if (action_M.price.is_abstain() || action_M.quantity == 0.0) return Regime::MOAbstains;
  switch (response_I.strategy) {
    case Strategy::Compete: return Regime::InduceCompete;
    case Strategy::Wait: return Regime::InduceWait;
    case Strategy::Abstain: return Regime::InduceAbstain;
  }
  return Regime::MOAbstains;
}

EquilibriumResult evaluate_operator_action(const Action& action_M, const GameParams& params) {
  EquilibriumResult r;
  r.action_M = action_M;
  r.response_I = best_response(action_M, params);
  const UtilityReport u = utilities(action_M, r.response_I.action, params);
  r.u_M = u.u_M;
  r.u_I = u.u_I;
  r.regime = classify_regime(r.action_M, r.response_I);
  if (consumer_surplus_defined(params)) {
    r.cs = consumer_surplus(action_M, r.response_I.action, params);
    r.welfare = *r.cs + r.u_M + r.u_I;
  }
  return r;
}

EquilibriumResult solve_equilibrium(const GameParams& params, const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  const KeyPrices kp = key_prices(params);

  if (kp.independent_priced_out(params.theta)) {
    if (kp.p_star_M.is_abstain()) return evaluate_operator_action(Action::abstain(), params);
    const double p = kp.p_star_M.value();
    return evaluate_operator_action(Action::at(p, demand(p, params)), params);
  }

  const double p0 = kp.p0;
  const double p_star = kp.p_star_I.value();
  const auto grid = static_cast<std::size_t>(cfg.price_grid);

  auto q_dagger_at = [&](double p) { return *thresholds(p, params).q_dagger; };

  // Inventory for the compete family: q_dagger, or the residual M can still
  // sell beside I when that is larger and worth stocking.
  auto compete_stock = [&](double p) {
    const double q = q_dagger_at(p);
    const double leftover = residual_after_compete(p, p, params);
    if (leftover > q && u_M_given_br(Price::at(p), leftover, params) > u_M_given_br(Price::at(p), q, params)) {
      return leftover;
    }
    return q;
  };
  auto compete_family = [&](double p) {
    if (q_dagger_at(p) > demand(p, params)) return -kInf;
    return u_M_given_br(Price::at(p), compete_stock(p), params);
  };
  auto beside_family = [&](double p) {
    return u_M_given_br(Price::at(p), residual_after_compete(p, p_star, params), params);
  };
  auto wait_family = [&](double p) {
    const double q = q_dagger_at(p);
    const double cap = demand(p, params);
    if (q > cap) return u_M_given_br(Price::at(p), cap, params);
    if (q <= cfg.epsilon_report) return -kInf;
    return u_M_wait_branch(p, q, params);
  };
  auto abstain_family = [&](double p) { return u_M_given_br(Price::at(p), demand(p, params), params); };

  const ScalarMax compete = grid_then_golden_max(compete_family, p0, p_star, grid, cfg.refine_tol);
  const ScalarMax wait = grid_then_golden_max(wait_family, p0, p_star, grid, cfg.refine_tol);
  const ScalarMax abstain = grid_then_golden_max(abstain_family, 0.0, p0, grid, cfg.refine_tol);
  ScalarMax beside;
  if (params.gamma < 1.0) {
    beside = grid_then_golden_max(beside_family, p_star, params.theta, grid, cfg.refine_tol);
  }

  // Family order doubles as the tie-break: compete (at p_M, then above p*_I),
  // wait, abstain, stay out.
  Candidate best;
  if (compete.found()) {
    keep_better(best, {Action::at(compete.x, compete_stock(compete.x)), compete.value});
  }
  if (beside.found() && residual_after_compete(beside.x, p_star, params) > 0.0) {
    keep_better(best, {Action::at(beside.x, residual_after_compete(beside.x, p_star, params)), beside.value});
  }
  // At p_M = p0 the wait limit leaves I no sales and meets the supremum of
  // the abstain family from the other side; that tie goes to abstain.
  const bool wait_on_boundary = wait.found() && abstain.found() && wait.x - p0 <= 1e-6 * params.theta &&
                                abstain.value >= wait.value - 1e-6 * std::max(1.0, std::abs(wait.value));
  if (wait.found() && !wait_on_boundary) {
    const double q = q_dagger_at(wait.x);
    const double cap = demand(wait.x, params);
    const double reported = q > cap ? cap : q - cfg.epsilon_report;
    keep_better(best, {Action::at(wait.x, reported), wait.value});
  }
  if (abstain.found()) {
    keep_better(best, {Action::at(abstain.x, demand(abstain.x, params)), abstain.value});
  }
  keep_better(best, {Action::abstain(), u_M_given_br(Price::abstain(), 0.0, params)});

  if (cfg.safety_grid > 0 && !best.action.price.is_abstain()) {
    const double p = best.action.price.value();
    const QuantityChoice guard = optimal_q_M(p, params, cfg);
    if (guard.source == QuantityCandidate::SafetyGrid) {
      keep_better(best, {Action::at(p, guard.q_M), guard.utility});
    }
  }
  return evaluate_operator_action(best.action, params);
}

}  // namespace opseller
