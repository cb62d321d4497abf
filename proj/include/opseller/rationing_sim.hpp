#pragma once

// Random-arrival model behind residual demand: theta customers with
// valuations ~ Uniform[0, theta] arrive one at a time and buy from the
// low-priced seller until its stock runs out; the rest face the higher price.

#include <cstdint>

#include "opseller/game.hpp"
#include "opseller/oracle.hpp"

namespace opseller {

struct SimConfig {
  int theta_int = 10;   // population size, also the demand intercept
  double p_low = 6.0;
  int q_low = 1;
  double p_eval = 7.0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0x5eed;

  void validate() const;

  /// Builds a config from game parameters; theta must be an integer.
  static SimConfig from_params(const GameParams& params, double p_low, int q_low, double p_eval,
                               std::int64_t trials, std::uint64_t seed);
};

struct SimResult {
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double closed_form = 0.0;
  double proportional_value = 0.0;
};

/// Expected residual demand at p_eval under random arrivals, from the
/// negative-binomial law of the stock-out time. Binomial terms are summed in
/// log space.
double negbin_residual(const SimConfig& cfg);

/// Probability that a customer is routed to the higher-priced seller under
/// proportional rationing: (Q(p_low) - q_low) / Q(p_low).
double proportional_rho(double p_low, double q_low, const GameParams& params);

/// Monte-Carlo estimate of the same residual demand. Each trial draws from its
/// own stream derived from (seed, trial index), so the result does not depend
/// on the execution mode or thread count.
SimResult simulate_arrivals(const SimConfig& cfg, Execution exec = Execution::Parallel);

}  // namespace opseller
