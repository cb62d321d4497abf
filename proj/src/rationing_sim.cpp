#include "opseller/rationing_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace opseller {

namespace {

GameParams population(const SimConfig& cfg) {
  GameParams p;
  p.theta = static_cast<double>(cfg.theta_int);
  return p;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Buyers left for the higher price after one run of arrivals.
int run_trial(const SimConfig& cfg, std::uint64_t trial) {
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(trial)));
  std::uniform_real_distribution<double> valuation(0.0, static_cast<double>(cfg.theta_int));
  int stock = cfg.q_low;
  int buyers = 0;
  for (int i = 0; i < cfg.theta_int; ++i) {
    const double v = valuation(rng);
    if (stock > 0) {
      if (v >= cfg.p_low) --stock;
    } else if (v >= cfg.p_eval) {
      ++buyers;
    }
  }
  return buyers;
}

}  // namespace

void SimConfig::validate() const {
  if (theta_int < 1) throw InvalidInput("simulation: theta must be a positive integer");
  if (q_low < 0 || q_low > theta_int) throw InvalidInput("simulation: q_low must lie in [0, theta]");
  if (trials < 1) throw InvalidInput("simulation: trials must be >= 1");
  const double theta = static_cast<double>(theta_int);
  if (!(p_low >= 0.0 && p_low < theta)) throw InvalidInput("simulation: p_low must lie in [0, theta)");
  if (!(p_eval >= 0.0 && p_eval <= theta)) throw InvalidInput("simulation: p_eval must lie in [0, theta]");
}

SimConfig SimConfig::from_params(const GameParams& params, double p_low, int q_low, double p_eval,
                                 std::int64_t trials, std::uint64_t seed) {
  params.validate();
  if (params.theta != std::floor(params.theta) || params.theta > 1e6) {
    throw UnsupportedConfiguration("the random-arrival model needs an integer population (theta = " +
                                   std::to_string(params.theta) + ")");
  }
  SimConfig cfg{static_cast<int>(params.theta), p_low, q_low, p_eval, trials, seed};
  cfg.validate();
  return cfg;
}

double negbin_residual(const SimConfig& cfg) {
  cfg.validate();
  const double theta = static_cast<double>(cfg.theta_int);
  const double share = (theta - cfg.p_eval) / theta;
  if (cfg.q_low == 0) return demand(cfg.p_eval, population(cfg));

  // N ~ NegBin(q, s): arrivals needed for q purchases, success probability s.
  const int q = cfg.q_low;
  const double s = (theta - cfg.p_low) / theta;
  const double miss = cfg.p_low / theta;
  double expected_left = 0.0;
  for (int n = q; n <= cfg.theta_int; ++n) {
    double pmf = 0.0;
    if (miss == 0.0) {
      pmf = n == q ? 1.0 : 0.0;
    } else {
      const double log_choose = std::lgamma(n) - std::lgamma(q) - std::lgamma(n - q + 1);
      pmf = std::exp(log_choose + (n - q) * std::log(miss) + q * std::log(s));
    }
    expected_left += (theta - n) * pmf;
  }
  return share * expected_left;
}

double proportional_rho(double p_low, double q_low, const GameParams& params) {
  params.validate();
  const double base = demand(p_low, params);
  if (base <= 0.0) throw InvalidInput("proportional rho: Q(p_low) must be positive");
  if (!(q_low >= 0.0 && q_low <= base)) throw InvalidInput("proportional rho: q_low must lie in [0, Q(p_low)]");
  return (base - q_low) / base;
}

SimResult simulate_arrivals(const SimConfig& cfg, Execution exec) {
  cfg.validate();
  std::vector<int> counts(static_cast<std::size_t>(cfg.trials));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
      counts[static_cast<std::size_t>(t)] = run_trial(cfg, static_cast<std::uint64_t>(t));
    }
  } else {
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
      counts[static_cast<std::size_t>(t)] = run_trial(cfg, static_cast<std::uint64_t>(t));
    }
  }

  // Integer sums are exact, so the statistics do not depend on thread layout.
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  for (const int c : counts) {
    sum += c;
    sum_sq += static_cast<long double>(c) * c;
  }
  const auto n = static_cast<long double>(cfg.trials);
  SimResult r;
  r.mc_mean = static_cast<double>(sum / n);
  if (cfg.trials >= 2) {
    const long double var = (sum_sq - sum * sum / n) / (n - 1.0L);
    r.mc_stderr = static_cast<double>(std::sqrt(std::max(var, 0.0L) / n));
  }
  r.closed_form = negbin_residual(cfg);

  const GameParams params = population(cfg);
  r.proportional_value = cfg.q_low == 0 ? demand(cfg.p_eval, params)
                                        : demand(cfg.p_eval, params) * proportional_rho(cfg.p_low, cfg.q_low, params);
  return r;
}

}  // namespace opseller
