#include "opseller/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "opseller/welfare.hpp"

namespace opseller {

namespace {

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  if (points == 1 || hi <= lo) {
    std::fill(g.begin(), g.end(), lo);
    return g;
  }
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = hi;
  return g;
}

void add_if_within(std::vector<double>& g, double x, double lo, double hi) {
  if (std::isfinite(x) && x >= lo && x <= hi) g.push_back(x);
}

void sort_unique(std::vector<double>& g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
}

struct PriceProbe {
  double price = 0.0;
  double demand = 0.0;
  double utility = -kInf;
};

// Lexicographic preference: higher utility, then positive demand, then lower price.
bool prefer(const PriceProbe& a, const PriceProbe& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  if ((a.demand > 0.0) != (b.demand > 0.0)) return a.demand > 0.0;
  return a.price < b.price;
}

// Scans I's candidate prices against a fixed operator action. `base_grid` is
// shared across calls; the action-dependent breakpoint p_M is probed on top.
BestResponse scan_independent_prices(const Action& action_M, const std::vector<double>& base_grid,
                                     const KeyPrices& kp, const GameParams& params,
                                     const OracleConfig& cfg) {
  const double keep = 1.0 - params.alpha;
  auto probe = [&](double p) {
    const Action mine{Price::at(p), 0.0};
    const double d = seller_demand(Seller::Independent, mine, action_M, params);
    return PriceProbe{p, d, (keep * p - params.c_I) * d};
  };

  PriceProbe best;
  best.price = kInf;
  for (const double p : base_grid) {
    const PriceProbe c = probe(p);
    if (prefer(c, best)) best = c;
  }
  if (!action_M.price.is_abstain() && action_M.price.value() <= params.theta) {
    const PriceProbe c = probe(action_M.price.value());
    if (prefer(c, best)) best = c;
  }

  BestResponse br;
  if (cfg.include_abstain && (best.utility < 0.0 || best.demand <= 0.0)) return br;

  const Action chosen{Price::at(best.price), best.demand};
  br.action = chosen;
  br.utility = utilities(action_M, chosen, params).u_I;
  br.strategy = action_M.price.is_abstain() || best.price <= action_M.price.value() ? Strategy::Compete
                                                                                     : Strategy::Wait;
  br.demonopolized = !kp.p_star_I.is_abstain() && best.price < kp.p_star_I.value() - kAnalyticTol;
  return br;
}

std::vector<double> independent_price_grid(const KeyPrices& kp, const GameParams& params,
                                           const OracleConfig& cfg) {
  std::vector<double> g = uniform_grid(0.0, params.theta, cfg.price_points);
  add_if_within(g, kp.p0, 0.0, params.theta);
  if (!kp.p_star_I.is_abstain()) add_if_within(g, kp.p_star_I.value(), 0.0, params.theta);
  sort_unique(g);
  return g;
}

struct CellBest {
  Action action_M;
  BestResponse response;
  double u_M = -kInf;
};

CellBest scan_row(double p_M, const std::vector<double>& i_grid, const KeyPrices& kp,
                  const GameParams& params, const OracleConfig& cfg) {
  const double cap = demand(p_M, params);
  std::vector<double> q_grid = uniform_grid(0.0, cap, cfg.quantity_points);
  if (!kp.independent_priced_out(params.theta)) {
    const Thresholds t = thresholds(p_M, params);
    if (t.q_dagger) add_if_within(q_grid, *t.q_dagger, 0.0, cap);
    add_if_within(q_grid, t.q_ddagger, 0.0, cap);
  }
  sort_unique(q_grid);

  CellBest best;
  for (const double q : q_grid) {
    const Action action_M{Price::at(p_M), q};
    const BestResponse br = scan_independent_prices(action_M, i_grid, kp, params, cfg);
    const double u = utilities(action_M, br.action, params).u_M;
    if (u > best.u_M) best = {action_M, br, u};
  }
  return best;
}

}  // namespace

void OracleConfig::validate() const {
  if (price_points < 100) throw InvalidInput("oracle: price_points must be >= 100");
  if (quantity_points < 100) throw InvalidInput("oracle: quantity_points must be >= 100");
}

BestResponse oracle_best_response(Price p_M, double q_M, const GameParams& params, const OracleConfig& cfg) {
  params.validate();
  cfg.validate();
  const Action action_M{p_M, q_M};
  action_M.validate();
  const KeyPrices kp = key_prices(params);
  return scan_independent_prices(action_M, independent_price_grid(kp, params, cfg), kp, params, cfg);
}

EquilibriumResult oracle_equilibrium(const GameParams& params, const OracleConfig& cfg, Execution exec) {
  params.validate();
  cfg.validate();
  const KeyPrices kp = key_prices(params);
  const std::vector<double> i_grid = independent_price_grid(kp, params, cfg);

  std::vector<double> m_grid = uniform_grid(0.0, params.theta, cfg.price_points);
  add_if_within(m_grid, kp.p0, 0.0, params.theta);
  if (!kp.p_star_I.is_abstain()) add_if_within(m_grid, kp.p_star_I.value(), 0.0, params.theta);
  if (!kp.p_star_M.is_abstain()) add_if_within(m_grid, kp.p_star_M.value(), 0.0, params.theta);
  sort_unique(m_grid);

  const auto rows = static_cast<std::ptrdiff_t>(m_grid.size());
  std::vector<CellBest> row_best(m_grid.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      row_best[static_cast<std::size_t>(r)] = scan_row(m_grid[static_cast<std::size_t>(r)], i_grid, kp, params, cfg);
    }
  } else {
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      row_best[static_cast<std::size_t>(r)] = scan_row(m_grid[static_cast<std::size_t>(r)], i_grid, kp, params, cfg);
    }
  }

  CellBest best;
  if (cfg.include_abstain) {
    const Action stay_out = Action::abstain();
    const BestResponse br = scan_independent_prices(stay_out, i_grid, kp, params, cfg);
    best = {stay_out, br, utilities(stay_out, br.action, params).u_M};
  }
  for (const CellBest& c : row_best) {
    if (c.u_M > best.u_M) best = c;
  }

  EquilibriumResult r;
  r.action_M = best.action_M;
  r.response_I = best.response;
  const UtilityReport u = utilities(r.action_M, r.response_I.action, params);
  r.u_M = u.u_M;
  r.u_I = u.u_I;
  r.regime = classify_regime(r.action_M, r.response_I);
  if (consumer_surplus_defined(params)) {
    r.cs = consumer_surplus(r.action_M, r.response_I.action, params);
    r.welfare = *r.cs + r.u_M + r.u_I;
  }
  return r;
}

DiscretizationBound discretization_terms(const GameParams& params, const OracleConfig& cfg) {
  params.validate();
  cfg.validate();
  const double theta = params.theta;
  const double a = params.alpha;
  // Slopes of u_I in p_I, of u_M in p_M and of u_M in q_M along any branch
  // where the strategy labels stay fixed.
  const double lip_independent_price = 2.0 * (1.0 - a) * theta + params.c_I;
  const double lip_operator_price = theta + 2.0 * a * theta + params.k;
  const double lip_operator_quantity = theta + params.c_M + params.k + params.gamma * (a * theta + params.k);

  DiscretizationBound b;
  b.price_term = (lip_independent_price + lip_operator_price) * 2.0 * theta / cfg.price_points;
  b.quantity_term = lip_operator_quantity * 2.0 * theta / cfg.quantity_points;
  return b;
}

bool near_threshold(double p_M, double q_M, const GameParams& params, double width) {
  const KeyPrices kp = key_prices(params);
  if (kp.independent_priced_out(params.theta)) return false;
  const double p_star = kp.p_star_I.value();
  if (std::abs(p_M - kp.p0) <= width || std::abs(p_M - p_star) <= width) return true;
  if (p_M > params.theta) return false;
  const Thresholds t = thresholds(p_M, params);
  if (t.q_dagger && std::abs(q_M - *t.q_dagger) <= width) return true;
  return p_M < kp.p0 && std::abs(q_M - t.q_ddagger) <= width;
}

}  // namespace opseller
