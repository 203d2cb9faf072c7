#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "vibdiag/coa.hpp"
#include "vibdiag/error.hpp"

using namespace vibdiag;
using namespace vibdiag::coa;

namespace {

CoaConfig box(std::size_t dims, double lo, double hi, std::size_t iters = 50,
              std::uint64_t seed = 1) {
  CoaConfig c;
  c.dimensions = dims;
  c.lower_bounds.assign(dims, lo);
  c.upper_bounds.assign(dims, hi);
  c.max_iterations = iters;
  c.rng_seed = seed;
  return c;
}

double neg_sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return -s;
}

bool inside(const std::vector<double>& x, const CoaConfig& c) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < c.lower_bounds[j] || x[j] > c.upper_bounds[j]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = box(2, -1.0, 1.0);
  CHECK_NOTHROW(c.validate());
  c.upper_bounds[1] = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = box(2, -1.0, 1.0);
  c.lower_bounds.pop_back();
  CHECK_THROWS_AS(c.validate(), Error);
  c = box(2, -1.0, 1.0);
  c.intake_coeff = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = box(2, -1.0, 1.0);
  c.population_size = 2;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("uniform draws stay in [0, 1) and streams are independent of each other") {
  Rng a(5, 1, 2), b(5, 1, 2), c(5, 1, 3);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
  CHECK(Rng(5, 1, 2).next() != c.next());
}

TEST_CASE("initial population fills the box and is reproducible") {
  const auto c = box(2, 0.0, 1.0);
  const auto p1 = initialize(c, neg_sphere);
  const auto p2 = initialize(c, neg_sphere);
  CHECK(p1.positions.size() == 30);
  for (const auto& x : p1.positions) CHECK(inside(x, c));
  CHECK(p1.positions == p2.positions);
  CHECK(p1.fitnesses == p2.fitnesses);
  CHECK(p1.evaluations == 30);

  auto thin = box(3, 4.0, 4.0 + 1e-9);
  for (const auto& x : initialize(thin, neg_sphere).positions) CHECK(inside(x, thin));
}

TEST_CASE("temperature range and mean") {
  CHECK(temperature_from_uniform(0.0) == 20.0);
  CHECK(temperature_from_uniform(std::nextafter(1.0, 0.0)) <= 35.0);
  CHECK(temperature_from_uniform(std::nextafter(1.0, 0.0)) == doctest::Approx(35.0));
  Rng rng(99);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += temperature(rng);
  CHECK(sum / 100000 == doctest::Approx(27.5).epsilon(0.1 / 27.5));
}

TEST_CASE("intake probability is a Gaussian in temperature") {
  const CoaConfig c = box(1, 0.0, 1.0);
  const double peak = intake_probability(25.0, c);
  CHECK(peak == 0.2 / (std::sqrt(2.0 * std::numbers::pi) * 3.0));
  CHECK(intake_probability(28.0, c) == doctest::Approx(peak * std::exp(-0.5)).epsilon(1e-14));
  CHECK(intake_probability(22.0, c) == doctest::Approx(peak * std::exp(-0.5)).epsilon(1e-14));
  for (double d : {0.5, 1.7, 4.0}) {
    CHECK(intake_probability(25.0 + d, c) == intake_probability(25.0 - d, c));
  }
}

TEST_CASE("shade coefficient decreases from 2 to 1") {
  CHECK(shade_coefficient(0, 100) == 2.0);
  CHECK(shade_coefficient(50, 100) == 1.5);
  CHECK(shade_coefficient(100, 100) == 1.0);
}

TEST_CASE("competitor index covers the whole population") {
  Rng rng(3);
  std::set<std::size_t> seen;
  for (int i = 0; i < 100000; ++i) {
    const auto z = competitor_index(rng.uniform(), 30);
    CHECK(z < 30);
    seen.insert(z);
  }
  CHECK(seen.size() == 30);
  CHECK(competitor_index(0.0, 30) == 0);
  CHECK(competitor_index(std::nextafter(1.0, 0.0), 30) == 29);
}

TEST_CASE("a population at the optimum stays put under foraging") {
  auto c = box(2, -5.0, 5.0, 10);
  auto pop = initialize(c, neg_sphere);
  for (auto& x : pop.positions) x = {0.0, 0.0};
  pop.fitnesses.assign(pop.positions.size(), 0.0);
  pop.best_position = {0.0, 0.0};
  pop.best_fitness = 0.0;
  for (double t : {20.0, 25.0, 30.0}) {
    pop = step(std::move(pop), neg_sphere, c, StepControls{t});
    CHECK(pop.best_fitness == 0.0);
    for (const auto& x : pop.positions) CHECK(inside(x, c));
  }
}

TEST_CASE("every evaluated position is inside the box") {
  const auto c = box(3, -2.0, 3.0, 40, 8);
  std::atomic<bool> ok{true};
  const FitnessFn f = [&](std::span<const double> x) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < -2.0 || x[j] > 3.0) ok = false;
    }
    return -std::abs(x[0] - 2.9) - std::abs(x[1] + 1.9) - x[2] * x[2];
  };
  (void)optimize(f, c);
  CHECK(ok);
}

TEST_CASE("optimize is monotone, reproducible and spends N(T+1) evaluations") {
  const auto c = box(2, -100.0, 100.0, 60, 4);
  std::size_t calls = 0;
  const FitnessFn counted = [&](std::span<const double> x) {
    ++calls;
    return neg_sphere(x);
  };
  const auto r1 = optimize(counted, c);
  CHECK(calls == 30 * 61);
  CHECK(r1.evaluations == 30 * 61);
  CHECK(r1.fitness_history.size() == 60);
  for (std::size_t i = 1; i < r1.fitness_history.size(); ++i) {
    CHECK(r1.fitness_history[i] >= r1.fitness_history[i - 1]);
  }
  CHECK(r1.best_fitness == r1.fitness_history.back());
  CHECK(r1.best_fitness == neg_sphere(r1.best_position));
  const auto r2 = optimize(neg_sphere, c);
  CHECK(r1.best_position == r2.best_position);
  CHECK(r1.fitness_history == r2.fitness_history);
}

TEST_CASE("worker count does not change the result") {
  auto c = box(2, -10.0, 10.0, 30, 12);
  const auto serial = optimize(neg_sphere, c);
  c.workers = 4;
  const auto threaded = optimize(neg_sphere, c);
  CHECK(serial.best_position == threaded.best_position);
  CHECK(serial.fitness_history == threaded.fitness_history);
}

TEST_CASE("constant fitness gives a flat history") {
  const auto c = box(2, 0.0, 1.0, 20);
  const auto r = optimize([](std::span<const double>) { return 4.25; }, c);
  CHECK(r.best_fitness == 4.25);
  for (double h : r.fitness_history) CHECK(h == 4.25);
}

TEST_CASE("maximizing the negation finds the minimizer") {
  const auto c = box(2, -5.0, 5.0, 100, 21);
  const auto shifted = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto r = optimize([&](std::span<const double> x) { return -shifted(x); }, c);
  CHECK(r.best_position[0] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(r.best_position[1] == doctest::Approx(-2.0).epsilon(1e-2));
  CHECK(-r.best_fitness == shifted(r.best_position));
}

TEST_CASE("non-finite fitness is never selected") {
  const auto c = box(1, -1.0, 1.0, 30);
  const auto r = optimize([](std::span<const double> x) {
    return x[0] > 0.0 ? std::nan("") : -x[0] * x[0];
  }, c);
  CHECK(std::isfinite(r.best_fitness));
  CHECK(r.best_position[0] <= 0.0);
  CHECK_THROWS_AS(optimize([](std::span<const double>) { return std::nan(""); }, c), Error);
}

TEST_CASE("hook-triggered re-evaluation refreshes the incumbent") {
  const auto c = box(1, -1.0, 1.0, 10);
  double offset = 0.0;
  const FitnessFn f = [&](std::span<const double> x) { return offset - x[0] * x[0]; };
  int calls = 0;
  const auto r = optimize(f, c, [&](const Population&) {
    ++calls;
    if (calls == 5) {
      offset = -10.0;
      return true;
    }
    return false;
  });
  CHECK(r.evaluations == 30 * 11 + 31);
  CHECK(r.best_fitness < -9.0);
  CHECK(r.best_fitness == doctest::Approx(f(r.best_position)));
}
