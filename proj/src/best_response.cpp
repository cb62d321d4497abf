#include "opseller/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opseller {

namespace {

// Generalized inverse of f(q) = gamma * q: inf{q >= 0 : f(q) >= y}.
double shift_inverse(double y, double gamma) {
  if (y <= 0.0) return 0.0;
  if (gamma == 0.0) return kInf;
  return y / gamma;
}

// Generalized inverse of g(q) = 1 - gamma * q / base: inf{q >= 0 : g(q) <= y}.
double factor_inverse(double y, double base, double gamma) {
  if (y >= 1.0) return 0.0;
  if (base <= 0.0) return 0.0;
  if (gamma == 0.0) return kInf;
  return base * (1.0 - y) / gamma;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Compete: return "compete";
    case Strategy::Wait: return "wait";
    case Strategy::Abstain: return "abstain";
  }
  return "unknown";
}

KeyPrices key_prices(const GameParams& params) {
  params.validate();
  KeyPrices kp;
  kp.p0 = params.alpha < 1.0 ? params.c_I / (1.0 - params.alpha) : kInf;
  if (kp.p0 <= params.theta) kp.p_star_I = Price::at(0.5 * (kp.p0 + params.theta));
  if (params.c_M <= params.theta + params.k) {
    kp.p_star_M = Price::at(0.5 * (params.c_M - params.k + params.theta));
  }
  return kp;
}

double wait_price(double q_M, const GameParams& params) {
  const KeyPrices kp = key_prices(params);
  if (kp.p_star_I.is_abstain()) throw InvalidInput("wait price undefined when p0 > theta");
  const double p_star = kp.p_star_I.value();
  switch (params.rationing) {
    case Rationing::Intensity: return p_star - 0.5 * intensity_shift(q_M, params);
    case Rationing::Proportional: return p_star;
  }
  return p_star;
}

Thresholds thresholds(double p_M, const GameParams& params, double q_M) {
  const KeyPrices kp = key_prices(params);
  if (kp.p_star_I.is_abstain()) throw InvalidInput("thresholds undefined when p0 > theta");
  if (!(p_M >= 0.0 && p_M <= params.theta)) {
    throw InvalidInput("thresholds: p_M must lie in [0, theta] (got " + std::to_string(p_M) + ")");
  }
  const double theta = params.theta;
  const double p0 = kp.p0;
  const double p_star = kp.p_star_I.value();

  Thresholds t;
  t.p_wait = wait_price(q_M, params);
  const bool intermediate = p_M >= p0 - kAnalyticTol && p_M <= p_star;

  switch (params.rationing) {
    case Rationing::Intensity: {
      t.q_ddagger = shift_inverse(theta - p0, params.gamma);
      if (intermediate) {
        const double y = theta - p0 - 2.0 * std::sqrt(std::max((p_M - p0) * (theta - p_M), 0.0));
        t.q_dagger = shift_inverse(y, params.gamma);
      }
      break;
    }
    case Rationing::Proportional: {
      const double base = demand(p_M, params);
      t.q_ddagger = factor_inverse(0.0, base, params.gamma);
      if (intermediate) {
        const double peak = (p_star - p0) * (theta - p_star);
        const double ratio = peak > 0.0 ? std::max((p_M - p0) * (theta - p_M), 0.0) / peak : 1.0;
        t.q_dagger = factor_inverse(ratio, base, params.gamma);
      }
      break;
    }
  }
  return t;
}

Action independent_action_at(double p_I, const Action& action_M, const GameParams& params) {
  Action probe{Price::at(p_I), 0.0};
  probe.quantity = seller_demand(Seller::Independent, probe, action_M, params);
  return probe;
}

BestResponse best_response(Price p_M, double q_M, const GameParams& params) {
  params.validate();
  const Action action_M{p_M, q_M};
  action_M.validate();

  const KeyPrices kp = key_prices(params);
  BestResponse br;
  if (kp.independent_priced_out(params.theta)) return br;

  const double p0 = kp.p0;
  const double p_star = kp.p_star_I.value();

  auto respond = [&](Strategy s, double price) {
    br.strategy = s;
    br.action = independent_action_at(price, action_M, params);
    br.utility = utilities(action_M, br.action, params).u_I;
    br.demonopolized = price < p_star - kAnalyticTol;
    return br;
  };

  if (p_M.is_abstain() || p_M.value() >= p_star - kAnalyticTol) {
    return respond(Strategy::Compete, p_star);
  }

  // Stock beyond Q(p_M) is never sold, so only the sellable part matters.
  const double price_M = p_M.value();
  const double sold_M = std::min(q_M, demand(price_M, params));
  const Thresholds t = thresholds(price_M, params, sold_M);
  if (price_M >= p0 - kAnalyticTol) {
    if (sold_M >= *t.q_dagger - kAnalyticTol) return respond(Strategy::Compete, price_M);
    return respond(Strategy::Wait, t.p_wait);
  }
  if (sold_M >= t.q_ddagger - kAnalyticTol) {
    br = BestResponse{};
    return br;
  }
  return respond(Strategy::Wait, t.p_wait);
}

}  // namespace opseller
