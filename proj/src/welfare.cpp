#include "opseller/welfare.hpp"

#include <algorithm>

#include "opseller/best_response.hpp"

namespace opseller {

namespace {

// Integral of (theta - t - price) dt over [from, to].
double surplus_strip(double from, double to, double price, double theta) {
  if (to <= from) return 0.0;
  return (theta - price) * (to - from) - 0.5 * (to * to - from * from);
}

void require_defined(const GameParams& params) {
  if (!consumer_surplus_defined(params)) {
    throw UnsupportedConfiguration(
        "consumer surplus is only defined for intensity rationing with gamma = 1");
  }
}

}  // namespace

bool consumer_surplus_defined(const GameParams& params) {
  return params.rationing == Rationing::Intensity && params.gamma == 1.0;
}

double consumer_surplus(const Action& action_M, const Action& action_I, const GameParams& params) {
  params.validate();
  require_defined(params);
  const UtilityReport sales = utilities(action_M, action_I, params);
  const double theta = params.theta;

  const bool m_sells = !action_M.price.is_abstain() && sales.units_sold_M > 0.0;
  const bool i_sells = !action_I.price.is_abstain() && sales.units_sold_I > 0.0;
  if (!m_sells && !i_sells) return 0.0;
  if (!i_sells) return surplus_strip(0.0, sales.units_sold_M, action_M.price.value(), theta);
  if (!m_sells) return surplus_strip(0.0, sales.units_sold_I, action_I.price.value(), theta);

  const double p_M = action_M.price.value();
  const double p_I = action_I.price.value();
  // Ties go to I, matching the demand-splitting rule.
  const bool i_low = p_I <= p_M;
  const double p_low = i_low ? p_I : p_M;
  const double p_high = i_low ? p_M : p_I;
  const double s_low = i_low ? sales.units_sold_I : sales.units_sold_M;
  const double s_high = i_low ? sales.units_sold_M : sales.units_sold_I;
  return surplus_strip(0.0, s_low, p_low, theta) + surplus_strip(s_low, s_low + s_high, p_high, theta);
}

WelfareReport welfare_report(const EquilibriumResult& eq, const GameParams& params) {
  params.validate();
  require_defined(params);
  WelfareReport w;
  const UtilityReport u = utilities(eq.action_M, eq.response_I.action, params);
  w.cs = consumer_surplus(eq.action_M, eq.response_I.action, params);
  w.u_M = u.u_M;
  w.u_I = u.u_I;
  w.welfare = w.cs + w.u_M + w.u_I;

  const KeyPrices kp = key_prices(params);
  if (!kp.p_star_I.is_abstain()) {
    const Action sole = Action::at(kp.p_star_I.value(), demand(kp.p_star_I.value(), params));
    const UtilityReport base = utilities(Action::abstain(), sole, params);
    w.cs_baseline = consumer_surplus(Action::abstain(), sole, params);
    w.u_I_baseline = base.u_I;
    w.u_M_baseline = base.u_M;
  }
  w.welfare_baseline = w.cs_baseline + w.u_M_baseline + w.u_I_baseline;
  return w;
}

SurplusTransfer surplus_transfer_check(double p_M, double q_M, const GameParams& params) {
  params.validate();
  require_defined(params);
  const Action action_M = Action::at(p_M, q_M);
  const EquilibriumResult outcome = evaluate_operator_action(action_M, params);
  const WelfareReport w = welfare_report(outcome, params);

  SurplusTransfer t;
  t.delta_ps = w.u_I - w.u_I_baseline;
  t.delta_cs = w.cs - w.cs_baseline;
  t.holds = -t.delta_ps <= t.delta_cs + 1e-9;
  return t;
}

}  // namespace opseller
