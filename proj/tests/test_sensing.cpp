#include <cmath>
#include <random>

#include "doctest.h"
#include "isac/sensing.hpp"

using namespace isac;

TEST_CASE("true_distance examples") {
  CHECK(true_distance({10, 20}, 50.0, {10, 20}) == 50.0);
  CHECK(true_distance({30, 40}, 50.0, {0, 0}) == doctest::Approx(70.7106781186548).epsilon(1e-13));
  CHECK(true_distance({0, 120}, 50.0, {0, 0}) == doctest::Approx(130.0).epsilon(1e-15));
}

TEST_CASE("true_distance properties") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  std::uniform_real_distribution<double> hd(1.0, 200.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 q{u(gen), u(gen)};
    const Vec2 p{u(gen), u(gen)};
    const double h = hd(gen);
    const double d = true_distance(q, h, p);
    CHECK(d > h);
    CHECK(d == true_distance(p, h, q));
    CHECK(true_distance(q, h, q) == doctest::Approx(h).epsilon(1e-15));
  }
}

TEST_CASE("measure_range") {
  Rng rng(5);
  CHECK(measure_range(100.0, 0.0, rng) == 100.0);

  Rng g(2024);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = measure_range(100.0, 2.0, g);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum2 - n * mean * mean) / (n - 1));
  CHECK(std::fabs(mean - 100.0) <= 0.02);
  CHECK(std::fabs(sd - 2.0) <= 0.02);
}

TEST_CASE("measure_range passes negative values through") {
  Rng g(1);
  bool negative = false;
  for (int i = 0; i < 1000 && !negative; ++i) negative = measure_range(0.1, 2.0, g) < 0.0;
  CHECK(negative);
}

TEST_CASE("delay_to_range") {
  CHECK(delay_to_range(0.0) == 0.0);
  CHECK(delay_to_range(1e-6) == doctest::Approx(149.896229).epsilon(1e-12));
  const double d = 70.7107;
  CHECK(delay_to_range(2.0 * d / kSpeedOfLight) == doctest::Approx(d).epsilon(1e-14));
}
