#include <doctest.h>

#include <random>

#include "opseller/game.hpp"
#include "support.hpp"

using namespace opseller;

TEST_CASE("demand is linear and truncated") {
  GameParams g;
  CHECK(demand(3.0, g) == 7.0);
  CHECK(demand(10.0, g) == 0.0);
  CHECK(demand(12.0, g) == 0.0);
  CHECK(inverse_demand(4.0, g) == 6.0);
  CHECK_THROWS_AS(demand(-1.0, g), InvalidInput);
  CHECK_THROWS_AS(inverse_demand(11.0, g), InvalidInput);
}

TEST_CASE("parameter validation") {
  GameParams g;
  CHECK_NOTHROW(g.validate());
  g.alpha = 1.5;
  CHECK_THROWS_AS(g.validate(), InvalidInput);
  g = {};
  g.gamma = 1.2;
  CHECK_THROWS_AS(g.validate(), InvalidInput);
  g = {};
  g.theta = 0.0;
  CHECK_THROWS_AS(g.validate(), InvalidInput);
  g = {};
  g.c_I = -1.0;
  CHECK_THROWS_AS(g.validate(), InvalidInput);
  CHECK(parse_rationing("proportional") == Rationing::Proportional);
  CHECK(to_string(Rationing::Intensity) == "intensity");
  CHECK_THROWS_AS(parse_rationing("inverse"), InvalidInput);
}

TEST_CASE("price sentinel") {
  const Price a = Price::abstain();
  CHECK(a.is_abstain());
  CHECK(a.or_infinity() == kInf);
  CHECK_THROWS_AS((void)a.value(), std::logic_error);
  CHECK(Price::at(3.0) < a);
  CHECK(Price::at(3.0) == Price::at(3.0));
  CHECK_THROWS_AS(Price::at(-0.5), InvalidInput);
  CHECK_THROWS_AS(Action::at(2.0, -1.0), InvalidInput);
  CHECK_THROWS_AS((Action{Price::abstain(), 1.0}.validate()), InvalidInput);
}

TEST_CASE("residual demand under both rationing rules") {
  GameParams g;
  CHECK(residual_demand(7.0, 2.0, 5.0, g) == doctest::Approx(1.0));
  CHECK(residual_demand(7.0, 5.0, 5.0, g) == 0.0);
  g.gamma = 0.5;
  CHECK(residual_demand(7.0, 2.0, 5.0, g) == doctest::Approx(2.0));
  g = {};
  g.rationing = Rationing::Proportional;
  CHECK(residual_demand(7.0, 2.0, 5.0, g) == doctest::Approx(1.8));
  CHECK(proportional_factor(2.0, 5.0, g) == doctest::Approx(0.6));
  CHECK(intensity_shift(2.0, g) == 2.0);
  CHECK_THROWS_AS(residual_demand(7.0, 6.0, 5.0, g), InvalidInput);
}

TEST_CASE("ties go to the independent seller") {
  GameParams g;
  const Action m = Action::at(5.0, 3.0);
  const Action i = Action::at(5.0, 5.0);
  CHECK(seller_demand(Seller::Independent, i, m, g) == 5.0);
  CHECK(seller_demand(Seller::Operator, m, i, g) == 0.0);
}

TEST_CASE("unsold stock does not shrink the residual") {
  GameParams g;
  // M stocks 100 units at 4 but only 6 customers buy there.
  const Action m = Action::at(4.0, 100.0);
  const Action i = Action::at(3.0, 7.0);
  CHECK(seller_demand(Seller::Operator, m, i, g) == doctest::Approx(0.0));
  const Action m2 = Action::at(2.0, 3.0);
  const Action i2 = Action::at(6.0, 4.0);
  CHECK(seller_demand(Seller::Independent, i2, m2, g) == doctest::Approx(1.0));
}

TEST_CASE("utilities match a hand calculation") {
  GameParams g;
  // M sells 1 unit at 4; I waits at 5.75 and sells 3.25.
  const UtilityReport u = utilities(Action::at(4.0, 1.0), Action::at(5.75, 3.25), g);
  CHECK(u.units_sold_M == doctest::Approx(1.0));
  CHECK(u.units_sold_I == doctest::Approx(3.25));
  CHECK(u.u_M == doctest::Approx(6.0 + (0.2 * 5.75 + 2.0) * 3.25 - 3.0));
  CHECK(u.u_I == doctest::Approx((0.8 * 5.75 - 2.0) * 3.25));

  const UtilityReport none = utilities(Action::abstain(), Action::abstain(), g);
  CHECK(none.u_M == 0.0);
  CHECK(none.u_I == 0.0);
}

TEST_CASE("residual demand properties on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    GameParams g = testing::random_params(rng);
    const double p_low = u(rng) * g.theta * 0.99;
    const double p_high = p_low + u(rng) * (g.theta - p_low);
    const double q1 = u(rng) * demand(p_low, g);
    const double q2 = q1 + u(rng) * (demand(p_low, g) - q1);
    const double r1 = residual_demand(p_high, q1, p_low, g);
    const double r2 = residual_demand(p_high, q2, p_low, g);
    CHECK(r1 >= 0.0);
    CHECK(r1 <= demand(p_high, g) + 1e-12);
    CHECK(r2 <= r1 + 1e-12);
    CHECK(r1 == doctest::Approx(testing::residual(p_high, q1, p_low, g)));
  }
}

TEST_CASE("utilities agree with the test-local accounting") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const GameParams g = testing::random_params(rng);
    const double p_M = u(rng) * g.theta;
    const double q_M = u(rng) * demand(p_M, g);
    const double p_I = u(rng) * g.theta;
    const testing::Reply r = testing::independent_at(p_I, false, p_M, q_M, g);
    const Action m = Action::at(p_M, q_M);
    const Action ia = Action::at(p_I, r.demand);
    const UtilityReport rep = utilities(m, ia, g);
    CHECK(rep.u_I == doctest::Approx(r.utility).epsilon(1e-9));
    const testing::Reply sells{p_I, r.demand, r.utility, r.demand > 0.0};
    CHECK(rep.u_M == doctest::Approx(testing::operator_utility(p_M, q_M, sells, g)).epsilon(1e-9));
  }
}
