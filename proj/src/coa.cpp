#include "vibdiag/coa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "vibdiag/error.hpp"

namespace vibdiag::coa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHotThreshold = 30.0;

std::uint64_t splitmix(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sanitize(double f) { return std::isfinite(f) ? f : kNegInf; }

std::vector<double> evaluate_all(const std::vector<std::vector<double>>& positions,
                                 const FitnessFn& fitness, unsigned workers) {
  std::vector<double> out(positions.size());
  const std::size_t n = positions.size();
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = sanitize(fitness(positions[i]));
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) out[i] = sanitize(fitness(positions[i]));
    });
  }
  pool.clear();  // joins
  return out;
}

std::size_t argmax(const std::vector<double>& values) {
  return static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));
}

// Rank 1 is the worst individual, rank N the best. Ties keep index order.
std::vector<double> fitness_ranks(const std::vector<double>& fitnesses) {
  std::vector<std::size_t> order(fitnesses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fitnesses[a] < fitnesses[b];
  });
  std::vector<double> ranks(fitnesses.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<double>(r + 1);
  return ranks;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t iteration, std::uint64_t individual) {
  std::uint64_t s = seed;
  state_ = splitmix(s);
  state_ ^= iteration * 0xD1B54A32D192ED03ULL;
  state_ = splitmix(state_);
  state_ ^= individual * 0x8CB92BA72F3D8DD7ULL;
  state_ = splitmix(state_);
}

std::uint64_t Rng::next() noexcept { return splitmix(state_); }

double Rng::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void CoaConfig::validate() const {
  const auto bad = [](const std::string& what) { fail(ErrorKind::Configuration, what); };
  if (population_size < 4) bad("population size must be at least 4");
  if (dimensions < 1) bad("dimension count must be at least 1");
  if (max_iterations < 1) bad("at least one iteration is required");
  if (lower_bounds.size() != dimensions || upper_bounds.size() != dimensions) {
    bad("bounds must have one entry per dimension");
  }
  for (std::size_t j = 0; j < dimensions; ++j) {
    if (!std::isfinite(lower_bounds[j]) || !std::isfinite(upper_bounds[j]) ||
        !(lower_bounds[j] < upper_bounds[j])) {
      bad("lower bound must be below upper bound in dimension " + std::to_string(j));
    }
  }
  for (double c : {intake_coeff, food_factor, temp_mu, temp_sigma}) {
    if (!(c > 0.0) || !std::isfinite(c)) bad("optimizer coefficients must be finite and positive");
  }
}

double temperature_from_uniform(double u) { return u * 15.0 + 20.0; }

double temperature(Rng& rng) { return temperature_from_uniform(rng.uniform()); }

double intake_probability(double temp, const CoaConfig& config) {
  const double s = config.temp_sigma;
  const double d = temp - config.temp_mu;
  return config.intake_coeff / (std::sqrt(2.0 * std::numbers::pi) * s) *
         std::exp(-(d * d) / (2.0 * s * s));
}

double shade_coefficient(std::size_t iteration, std::size_t max_iterations) {
  return 2.0 - static_cast<double>(iteration) / static_cast<double>(max_iterations);
}

std::size_t competitor_index(double u, std::size_t population_size) {
  return static_cast<std::size_t>(std::round(u * static_cast<double>(population_size - 1)));
}

Population initialize(const CoaConfig& config, const FitnessFn& fitness) {
  config.validate();
  Population pop;
  pop.positions.resize(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    Rng rng(config.rng_seed, 0, i);
    auto& x = pop.positions[i];
    x.resize(config.dimensions);
    for (std::size_t j = 0; j < config.dimensions; ++j) {
      const double lb = config.lower_bounds[j];
      const double ub = config.upper_bounds[j];
      x[j] = std::min(ub, lb + (ub - lb) * rng.uniform());
    }
  }
  pop.fitnesses = evaluate_all(pop.positions, fitness, config.workers);
  pop.evaluations = config.population_size;
  const std::size_t best = argmax(pop.fitnesses);
  if (!std::isfinite(pop.fitnesses[best])) {
    fail(ErrorKind::Initialization, "fitness is non-finite for every initial candidate");
  }
  pop.best_position = pop.positions[best];
  pop.best_fitness = pop.fitnesses[best];
  return pop;
}

Population step(Population pop, const FitnessFn& fitness, const CoaConfig& config,
                const StepControls& controls) {
  if (pop.iteration >= config.max_iterations) {
    fail(ErrorKind::InvalidInput, "optimizer has already run its iteration budget");
  }
  const std::size_t n = pop.positions.size();
  const std::size_t dim = config.dimensions;
  const double c2 = shade_coefficient(pop.iteration, config.max_iterations);
  const double c3 = config.food_factor;

  // Summer-resort cave: midpoint of the global best and the current
  // generation's best.
  const auto& local_best = pop.positions[argmax(pop.fitnesses)];
  std::vector<double> shade(dim);
  for (std::size_t j = 0; j < dim; ++j) shade[j] = 0.5 * (pop.best_position[j] + local_best[j]);

  const auto& food = pop.best_position;
  const auto ranks = fitness_ranks(pop.fitnesses);
  const double food_rank = static_cast<double>(n);

  std::vector<std::vector<double>> candidates(n, std::vector<double>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(config.rng_seed, pop.iteration + 1, i);
    const double temp = controls.forced_temperature ? *controls.forced_temperature
                                                    : temperature(rng);
    const auto& x = pop.positions[i];
    auto& next = candidates[i];

    if (temp > kHotThreshold) {
      if (rng.uniform() < 0.5) {
        for (std::size_t j = 0; j < dim; ++j) {
          next[j] = x[j] + c2 * rng.uniform() * (shade[j] - x[j]);
        }
      } else {
        for (std::size_t j = 0; j < dim; ++j) {
          const std::size_t z = competitor_index(rng.uniform(), n);
          next[j] = x[j] - pop.positions[z][j] + shade[j];
        }
      }
    } else {
      const double p = intake_probability(temp, config);
      const double q = c3 * rng.uniform() * (food_rank / ranks[i]);
      if (q > 0.5 * (c3 + 1.0)) {
        const double shrink = std::exp(-1.0 / q);
        for (std::size_t j = 0; j < dim; ++j) {
          const double r1 = rng.uniform();
          const double r2 = rng.uniform();
          next[j] = x[j] + food[j] * shrink * p *
                               (std::cos(2.0 * std::numbers::pi * r1) -
                                std::sin(2.0 * std::numbers::pi * r2));
        }
      } else {
        for (std::size_t j = 0; j < dim; ++j) {
          next[j] = (x[j] - food[j]) * p + p * rng.uniform() * x[j];
        }
      }
    }
    for (std::size_t j = 0; j < dim; ++j) {
      next[j] = std::clamp(next[j], config.lower_bounds[j], config.upper_bounds[j]);
    }
  }

  const auto scores = evaluate_all(candidates, fitness, config.workers);
  pop.evaluations += n;
  for (std::size_t i = 0; i < n; ++i) {
    if (scores[i] > pop.fitnesses[i]) {
      pop.positions[i] = std::move(candidates[i]);
      pop.fitnesses[i] = scores[i];
      if (scores[i] > pop.best_fitness) {
        pop.best_fitness = scores[i];
        pop.best_position = pop.positions[i];
      }
    }
  }
  ++pop.iteration;
  return pop;
}

Population reevaluate(Population pop, const FitnessFn& fitness, const CoaConfig& config) {
  pop.fitnesses = evaluate_all(pop.positions, fitness, config.workers);
  pop.best_fitness = sanitize(fitness(pop.best_position));
  pop.evaluations += pop.positions.size() + 1;
  const std::size_t best = argmax(pop.fitnesses);
  if (pop.fitnesses[best] > pop.best_fitness) {
    pop.best_fitness = pop.fitnesses[best];
    pop.best_position = pop.positions[best];
  }
  return pop;
}

OptimizationResult optimize(const FitnessFn& fitness, const CoaConfig& config,
                            const IterationHook& hook) {
  Population pop = initialize(config, fitness);
  OptimizationResult result;
  result.fitness_history.reserve(config.max_iterations);
  while (pop.iteration < config.max_iterations) {
    pop = step(std::move(pop), fitness, config);
    if (hook && hook(pop)) pop = reevaluate(std::move(pop), fitness, config);
    result.fitness_history.push_back(pop.best_fitness);
  }
  result.best_position = pop.best_position;
  result.best_fitness = pop.best_fitness;
  result.evaluations = pop.evaluations;
  return result;
}

}  // namespace vibdiag::coa
