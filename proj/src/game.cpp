#include "opseller/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opseller {

namespace {

std::string describe(const char* what, double value) {
  return std::string(what) + " (got " + std::to_string(value) + ")";
}

// q_low is checked against Q(p_low) with a little slack for values produced by
// floating-point arithmetic on the same expression.
void check_low_quantity(double q_low, double p_low, const GameParams& params) {
  if (!(q_low >= 0.0)) throw InvalidInput(describe("residual demand: q_low must be >= 0", q_low));
  if (!(p_low >= 0.0)) throw InvalidInput(describe("residual demand: p_low must be >= 0", p_low));
  const double cap = demand(p_low, params);
  if (q_low > cap + kAnalyticTol * std::max(1.0, params.theta)) {
    throw InvalidInput("residual demand: q_low " + std::to_string(q_low) +
                       " exceeds Q(p_low) = " + std::to_string(cap));
  }
}

}  // namespace

std::string_view to_string(Rationing r) {
  switch (r) {
    case Rationing::Intensity: return "intensity";
    case Rationing::Proportional: return "proportional";
  }
  return "unknown";
}

Rationing parse_rationing(std::string_view text) {
  if (text == "intensity") return Rationing::Intensity;
  if (text == "proportional") return Rationing::Proportional;
  throw InvalidInput("unknown rationing rule '" + std::string(text) +
                     "' (expected intensity or proportional)");
}

void GameParams::validate() const {
  if (!(std::isfinite(theta) && theta > 0.0)) throw InvalidInput(describe("theta must be > 0", theta));
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput(describe("alpha must lie in [0, 1]", alpha));
  if (!(std::isfinite(k) && k >= 0.0)) throw InvalidInput(describe("k must be >= 0", k));
  if (!(std::isfinite(c_M) && c_M >= 0.0)) throw InvalidInput(describe("c_M must be >= 0", c_M));
  if (!(std::isfinite(c_I) && c_I >= 0.0)) throw InvalidInput(describe("c_I must be >= 0", c_I));
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidInput(describe("gamma must lie in [0, 1]", gamma));
}

Price Price::at(double value) {
  if (!(std::isfinite(value) && value >= 0.0)) {
    throw InvalidInput(describe("price must be finite and >= 0", value));
  }
  return Price{value};
}

double Price::value() const {
  if (abstain_) throw std::logic_error("Price::value() called on the abstain sentinel");
  return value_;
}

Action Action::at(double price, double quantity) {
  Action a{Price::at(price), quantity};
  a.validate();
  return a;
}

void Action::validate() const {
  if (!(std::isfinite(quantity) && quantity >= 0.0)) {
    throw InvalidInput(describe("quantity must be finite and >= 0", quantity));
  }
  if (price.is_abstain() && quantity != 0.0) {
    throw InvalidInput(describe("an abstaining seller must stock zero units", quantity));
  }
}

double demand(double price, const GameParams& params) {
  if (!(price >= 0.0)) throw InvalidInput(describe("demand: price must be >= 0", price));
  return price <= params.theta ? params.theta - price : 0.0;
}

double inverse_demand(double quantity, const GameParams& params) {
  if (!(quantity >= 0.0 && quantity <= params.theta)) {
    throw InvalidInput(describe("inverse demand: quantity must lie in [0, theta]", quantity));
  }
  return params.theta - quantity;
}

double intensity_shift(double q_low, const GameParams& params) { return params.gamma * q_low; }

double proportional_factor(double q_low, double p_low, const GameParams& params) {
  if (q_low == 0.0) return 1.0;
  const double base = demand(p_low, params);
  if (base <= 0.0) {
    throw InvalidInput("proportional rationing: Q(p_low) = 0 with positive q_low");
  }
  return 1.0 - params.gamma * q_low / base;
}

double residual_demand(double p_high, double q_low, double p_low, const GameParams& params) {
  check_low_quantity(q_low, p_low, params);
  const double full = demand(p_high, params);
  if (q_low == 0.0) return full;
  switch (params.rationing) {
    case Rationing::Intensity:
      return std::max(full - intensity_shift(q_low, params), 0.0);
    case Rationing::Proportional:
      return std::max(full * proportional_factor(q_low, p_low, params), 0.0);
  }
  return full;
}

double seller_demand(Seller who, const Action& own, const Action& other, const GameParams& params) {
  own.validate();
  other.validate();
  if (own.price.is_abstain()) return 0.0;
  const double p_own = own.price.value();
  if (other.price.is_abstain()) return demand(p_own, params);

  const double p_other = other.price.value();
  const bool own_is_low = p_own < p_other || (p_own == p_other && who == Seller::Independent);
  if (own_is_low) return demand(p_own, params);

  const double sold_by_other = std::min(other.quantity, demand(p_other, params));
  return residual_demand(p_own, sold_by_other, p_other, params);
}

UtilityReport utilities(const Action& action_M, const Action& action_I, const GameParams& params) {
  UtilityReport r;
  r.units_sold_M = std::min(action_M.quantity, seller_demand(Seller::Operator, action_M, action_I, params));
  r.units_sold_I = std::min(action_I.quantity, seller_demand(Seller::Independent, action_I, action_M, params));

  const double p_M = action_M.price.is_abstain() ? 0.0 : action_M.price.value();
  const double p_I = action_I.price.is_abstain() ? 0.0 : action_I.price.value();
  r.u_M = (p_M + params.k) * r.units_sold_M + (params.alpha * p_I + params.k) * r.units_sold_I -
          params.c_M * action_M.quantity;
  r.u_I = (1.0 - params.alpha) * p_I * r.units_sold_I - params.c_I * action_I.quantity;
  return r;
}

}  // namespace opseller
