#pragma once

// Core types of the operator-as-seller pricing game: a marketplace operator (M)
// and an independent seller (I) sell the same good on a linear demand curve
// Q(p) = theta - p. M moves first with (price, quantity); I responds.

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opseller {

/// Absolute tolerance for comparisons between analytically equal quantities.
inline constexpr double kAnalyticTol = 1e-12;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Rationing { Intensity, Proportional };

std::string_view to_string(Rationing r);
Rationing parse_rationing(std::string_view text);

/// Exogenous scalars of the game.
struct GameParams {
  double theta = 10.0;  // max willingness to pay; also the population size
  double alpha = 0.2;   // referral fee, fraction of I's revenue
  double k = 2.0;       // M's per-unit customer-experience benefit
  double c_M = 3.0;
  double c_I = 2.0;
  double gamma = 1.0;   // substitutability, 1 = perfect substitutes
  Rationing rationing = Rationing::Intensity;

  /// Throws InvalidInput when any field leaves its domain.
  void validate() const;
};

/// A seller's price, or the abstain sentinel (no sale at any price).
class Price {
 public:
  constexpr Price() = default;

  static constexpr Price abstain() { return Price{}; }
  static Price at(double value);

  [[nodiscard]] constexpr bool is_abstain() const { return abstain_; }
  /// Throws std::logic_error on the abstain sentinel.
  [[nodiscard]] double value() const;
  /// Abstain maps to +infinity.
  [[nodiscard]] constexpr double or_infinity() const { return abstain_ ? kInf : value_; }

  friend constexpr bool operator==(const Price& a, const Price& b) {
    return a.abstain_ == b.abstain_ && (a.abstain_ || a.value_ == b.value_);
  }
  friend constexpr std::partial_ordering operator<=>(const Price& a, const Price& b) {
    return a.or_infinity() <=> b.or_infinity();
  }

 private:
  constexpr explicit Price(double v) : abstain_(false), value_(v) {}

  bool abstain_ = true;
  double value_ = 0.0;
};

struct Action {
  Price price;
  double quantity = 0.0;

  static constexpr Action abstain() { return Action{}; }
  static Action at(double price, double quantity);

  /// quantity >= 0, and zero when the price is the abstain sentinel.
  void validate() const;

  friend bool operator==(const Action&, const Action&) = default;
};

enum class Seller { Operator, Independent };

struct UtilityReport {
  double u_M = 0.0;
  double u_I = 0.0;
  double units_sold_M = 0.0;
  double units_sold_I = 0.0;
};

/// Q(p): theta - p on [0, theta], zero above.
double demand(double price, const GameParams& params);

/// P(q) = theta - q on [0, theta].
double inverse_demand(double quantity, const GameParams& params);

/// Subtractive transform f(q) = gamma * q used by intensity rationing.
double intensity_shift(double q_low, const GameParams& params);

/// Multiplicative factor g(q; p_low) = 1 - gamma * q / Q(p_low) used by
/// proportional rationing. Equals the probability that a customer is routed to
/// the higher-priced seller when gamma = 1.
double proportional_factor(double q_low, double p_low, const GameParams& params);

/// Demand left for the higher-priced seller at p_high after the lower-priced
/// seller sold q_low units at p_low. Requires q_low <= Q(p_low).
double residual_demand(double p_high, double q_low, double p_low, const GameParams& params);

/// Demand faced by `who` given both actions. The lower price faces Q; a price
/// tie is broken in favor of I. The other seller's units enter the residual as
/// units actually sold, min(q, Q(p)).
double seller_demand(Seller who, const Action& own, const Action& other, const GameParams& params);

/// Realized utilities when both sellers stock their quantities.
UtilityReport utilities(const Action& action_M, const Action& action_I, const GameParams& params);

}  // namespace opseller
