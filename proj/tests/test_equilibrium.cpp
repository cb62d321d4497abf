#include <doctest.h>

#include <cmath>
#include <random>

#include "opseller/equilibrium.hpp"
#include "support.hpp"

using namespace opseller;

namespace {

double stay_out_utility(const GameParams& g) {
  const KeyPrices kp = key_prices(g);
  if (kp.p_star_I.is_abstain()) return 0.0;
  const double p = kp.p_star_I.value();
  return (g.alpha * p + g.k) * demand(p, g);
}

// Coarse search over (p_M, q_M). I's reply comes from the closed-form best
// response (checked against dense price scans in its own suite); M's utility
// is booked with the test-local accounting.
double grid_u_M(const GameParams& g, int points) {
  auto score = [&](bool m_abstains, double p, double q) {
    const BestResponse br = best_response(m_abstains ? Price::abstain() : Price::at(p), q, g);
    testing::Reply r;
    if (br.strategy != Strategy::Abstain) {
      r = {br.action.price.value(), br.action.quantity, br.utility, br.action.quantity > 0.0};
    }
    if (m_abstains) return (g.alpha * r.price + g.k) * (r.sells ? r.demand : 0.0);
    return testing::operator_utility(p, q, r, g);
  };
  double best = score(true, 0.0, 0.0);
  for (int i = 0; i < points; ++i) {
    const double p = g.theta * i / (points - 1);
    for (int j = 0; j < points; ++j) best = std::max(best, score(false, p, demand(p, g) * j / (points - 1)));
  }
  return best;
}

}  // namespace

TEST_CASE("operator utility with I best-responding") {
  const GameParams g;  // c_I 2, c_M 3, k 2
  CHECK(u_M_given_br(Price::at(4.0), 0.0, g) == doctest::Approx(12.1875));
  CHECK(u_M_given_br(Price::at(4.0), 1.5, g) == doctest::Approx(12.3));
  CHECK(u_M_wait_branch(4.0, 1.5, g) == doctest::Approx(13.8));
  CHECK(u_M_given_br(Price::at(4.0), 1.5 - 1e-9, g) == doctest::Approx(13.8).epsilon(1e-6));
  CHECK(u_M_given_br(Price::abstain(), 0.0, g) == doctest::Approx(12.1875));
}

TEST_CASE("optimal inventory at a fixed price") {
  const GameParams g;
  const QuantityChoice high = optimal_q_M(7.0, g);
  CHECK(high.q_M == 0.0);

  const SolverConfig cfg;
  const QuantityChoice mid = optimal_q_M(4.0, g, cfg);
  CHECK(mid.q_M == doctest::Approx(1.5 - cfg.epsilon_report).epsilon(1e-12));
  CHECK(mid.utility == doctest::Approx(13.8));
  CHECK(mid.source == QuantityCandidate::WaitLimit);

  GameParams costly = g;
  costly.c_M = 10.0;
  CHECK(optimal_q_M(2.0, costly).q_M == 0.0);
}

TEST_CASE("worked example") {
  GameParams g;
  g.c_I = 1.0;
  const EquilibriumResult r = solve_equilibrium(g);
  CHECK(r.regime == Regime::InduceCompete);
  CHECK(r.action_M.price.value() == doctest::Approx(4.39).epsilon(0.01 / 4.39));
  CHECK(std::abs(r.action_M.quantity - 0.35) <= 0.01);
  CHECK(r.response_I.action.price == r.action_M.price);
  CHECK(std::abs(r.response_I.action.quantity - 5.61) <= 0.01);
  CHECK(key_prices(g).p_star_I.value() == 5.625);
}

TEST_CASE("independent seller priced out: trivial solution") {
  GameParams g;
  g.c_I = 9.0;
  g.c_M = 2.0;
  const EquilibriumResult r = solve_equilibrium(g);
  CHECK(r.regime == Regime::InduceAbstain);
  CHECK(r.action_M.price.value() == 5.0);
  CHECK(r.action_M.quantity == 5.0);
  CHECK(r.u_M == 25.0);

  g.c_M = 13.0;
  CHECK(solve_equilibrium(g).regime == Regime::MOAbstains);
}

TEST_CASE("high operator cost induces competition") {
  GameParams g;
  g.c_M = 8.0;
  g.c_I = 1.0;
  CHECK(solve_equilibrium(g).regime == Regime::InduceCompete);
}

TEST_CASE("regime classification") {
  const GameParams g;
  CHECK(classify_regime(Action::at(4.0, 0.0), best_response(Price::at(4.0), 0.0, g)) == Regime::MOAbstains);
  CHECK(classify_regime(Action::abstain(), best_response(Price::abstain(), 0.0, g)) == Regime::MOAbstains);
  CHECK(classify_regime(Action::at(4.0, 1.0), best_response(Price::at(4.0), 1.0, g)) == Regime::InduceWait);
  CHECK(classify_regime(Action::at(2.0, 8.0), best_response(Price::at(2.0), 8.0, g)) == Regime::InduceAbstain);
  CHECK(to_string(Regime::InduceCompete) == "induce_compete");
  CHECK(to_string(Regime::MOAbstains) == "mo_abstains");
}

TEST_CASE("a wait equilibrium near equal costs") {
  GameParams g;
  g.c_M = 2.0;
  g.c_I = 1.0;
  const EquilibriumResult r = solve_equilibrium(g);
  REQUIRE(r.regime == Regime::InduceWait);
  const KeyPrices kp = key_prices(g);
  const double p = r.action_M.price.value();
  CHECK(p > kp.p0);
  CHECK(p < kp.p_star_I.value());
  const double qd = *thresholds(p, g).q_dagger;
  CHECK(r.action_M.quantity == doctest::Approx(qd - SolverConfig{}.epsilon_report).epsilon(1e-12));
  CHECK(r.response_I.action.price.value() > p);
  CHECK(r.u_M == doctest::Approx(u_M_wait_branch(p, qd, g)).epsilon(1e-5));
}

TEST_CASE("result invariants on random parameters") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 150; ++i) {
    const GameParams g = testing::random_params(rng);
    const EquilibriumResult r = solve_equilibrium(g);
    const BestResponse again = best_response(r.action_M, g);
    CHECK(again.strategy == r.response_I.strategy);
    CHECK(again.action == r.response_I.action);
    const UtilityReport u = utilities(r.action_M, r.response_I.action, g);
    CHECK(u.u_M == r.u_M);
    CHECK(u.u_I == r.u_I);
    CHECK((r.regime == Regime::MOAbstains) == (r.action_M.price.is_abstain() || r.action_M.quantity == 0.0));
    CHECK(r.u_M >= stay_out_utility(g) - 1e-9);
    CHECK(r.cs.has_value() == (g.rationing == Rationing::Intensity && g.gamma == 1.0));
  }
}

TEST_CASE("no nearby price does better") {
  std::mt19937_64 rng(8);
  const SolverConfig cfg;
  for (int i = 0; i < 60; ++i) {
    const GameParams g = testing::random_params(rng);
    const EquilibriumResult r = solve_equilibrium(g, cfg);
    if (r.action_M.price.is_abstain()) continue;
    const double p = r.action_M.price.value();
    const double delta = 10.0 * cfg.refine_tol;
    for (const double q : {p - delta, p + delta}) {
      if (q < 0.0) continue;
      const KeyPrices kp = key_prices(g);
      if (kp.independent_priced_out(g.theta)) continue;
      CHECK(optimal_q_M(q, g, cfg).utility <= r.u_M + 1e-6);
    }
  }
}

TEST_CASE("wait-branch curvature") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    GameParams g = testing::random_params(rng);
    g.c_I = 2.0 * u(rng);
    const KeyPrices kp = key_prices(g);
    if (kp.independent_priced_out(g.theta)) continue;
    const double p = kp.p0 + 0.5 * (kp.p_star_I.value() - kp.p0);
    const double qd = std::min(*thresholds(p, g).q_dagger, demand(p, g));
    const double q = qd * (0.25 + 0.5 * u(rng));
    const double h = 1e-3 * qd;
    const double second = (u_M_wait_branch(p, q + h, g) - 2.0 * u_M_wait_branch(p, q, g) + u_M_wait_branch(p, q - h, g)) / (h * h);
    if (g.rationing == Rationing::Intensity) {
      CHECK(second == doctest::Approx(0.5 * g.alpha * g.gamma * g.gamma).epsilon(1e-4));
    } else {
      CHECK(std::abs(second) <= 1e-4);
    }
    // Continuity on [0, q_dagger): the branch and the best-response path agree.
    CHECK(u_M_wait_branch(p, q, g) == doctest::Approx(u_M_given_br(Price::at(p), q, g)).epsilon(1e-12));
  }
}

TEST_CASE("deterministic solves") {
  GameParams g;
  g.c_I = 1.3;
  g.rationing = Rationing::Proportional;
  g.gamma = 0.5;
  const EquilibriumResult a = solve_equilibrium(g);
  const EquilibriumResult b = solve_equilibrium(g);
  CHECK(a.action_M == b.action_M);
  CHECK(a.u_M == b.u_M);
}

TEST_CASE("solver dominates a grid of operator actions") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const GameParams g = testing::random_params(rng);
    const double grid = grid_u_M(g, 201);
    const double solved = solve_equilibrium(g).u_M;
    CHECK(solved >= grid - 1e-9);
    // Cells are theta/200 wide; u_M moves by less than 30 per unit of p_M or
    // q_M on this parameter box.
    CHECK(solved <= grid + 30.0 * 2.0 * g.theta / 200.0);
  }
}

TEST_CASE("solver configuration checks") {
  SolverConfig c;
  c.price_grid = 4;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c = {};
  c.epsilon_report = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
}
