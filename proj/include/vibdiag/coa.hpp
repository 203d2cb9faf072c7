#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace vibdiag::coa {

/// Counter-based splitmix64 stream. One stream per (seed, iteration,
/// crayfish) so results do not depend on evaluation order.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t iteration, std::uint64_t individual);
  explicit Rng(std::uint64_t seed) : Rng(seed, 0, 0) {}

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::uint64_t state_;
};

struct CoaConfig {
  std::size_t population_size = 30;
  std::size_t dimensions = 1;
  std::size_t max_iterations = 100;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  double intake_coeff = 0.2;  // C1
  double food_factor = 3.0;   // C3
  double temp_mu = 25.0;      // optimal temperature, deg C
  double temp_sigma = 3.0;    // deg C
  std::uint64_t rng_seed = 0;
  /// Threads used for fitness evaluation within one step. Results are
  /// identical for any value.
  unsigned workers = 1;

  /// Throws Configuration on any violated invariant.
  void validate() const;
};

/// Maximized. Non-finite returns are treated as -infinity.
using FitnessFn = std::function<double(std::span<const double>)>;

struct Population {
  std::vector<std::vector<double>> positions;
  std::vector<double> fitnesses;
  std::vector<double> best_position;  // X_G
  double best_fitness = 0.0;
  std::size_t iteration = 0;
  std::size_t evaluations = 0;
};

struct OptimizationResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::vector<double> fitness_history;  // best-so-far after each step
  std::size_t evaluations = 0;
};

/// temp = 15 * rand + 20, so 20 <= temp <= 35.
double temperature(Rng& rng);
double temperature_from_uniform(double u);

/// Intake probability p = C1 / (sqrt(2 pi) sigma) * exp(-(temp - mu)^2 / (2 sigma^2)).
double intake_probability(double temp, const CoaConfig& config);

/// C2 = 2 - t / T.
double shade_coefficient(std::size_t iteration, std::size_t max_iterations);

/// Competitor index round(u * (N - 1)), zero-based.
std::size_t competitor_index(double u, std::size_t population_size);

/// Test and diagnostic controls for a single step.
struct StepControls {
  /// Replaces every crayfish's temperature draw.
  std::optional<double> forced_temperature;
};

Population initialize(const CoaConfig& config, const FitnessFn& fitness);

Population step(Population pop, const FitnessFn& fitness, const CoaConfig& config,
                const StepControls& controls = {});

/// Re-scores every position and the incumbent after the objective changed.
/// Returns the refreshed population; best_position may move to a member.
Population reevaluate(Population pop, const FitnessFn& fitness, const CoaConfig& config);

/// Called after each step with the current population. Returning true
/// signals that the objective changed and triggers reevaluate().
using IterationHook = std::function<bool(const Population&)>;

OptimizationResult optimize(const FitnessFn& fitness, const CoaConfig& config,
                            const IterationHook& hook = {});

}  // namespace vibdiag::coa
