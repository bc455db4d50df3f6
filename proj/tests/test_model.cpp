#include <doctest.h>

#include <random>

#include "remest/model.hpp"
#include "test_helpers.hpp"

using namespace remest;

TEST_CASE("validate_spec accepts a plain scalar instance") {
  const ProblemSpec spec = ProblemSpec::homogeneous(5, 3, 1.0, 1.0);
  CHECK_NOTHROW(validate_spec(spec));
}

TEST_CASE("validate_spec rejects a non-orthogonal rotation") {
  ProblemSpec spec = ProblemSpec::homogeneous(2, 1, 1.0, 1.0, 2);
  spec.rotation << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(validate_spec(spec), ValidationError);
  try {
    validate_spec(spec);
  } catch (const ValidationError& err) {
    CHECK(err.field() == "rotation");
  }
}

TEST_CASE("validate_spec rejects a negative noise radius") {
  ProblemSpec spec = ProblemSpec::homogeneous(3, 1, 1.0, 1.0);
  spec.noise_radii[1] = -0.1;
  try {
    validate_spec(spec);
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    CHECK(err.field() == "noise_radii");
  }
}

TEST_CASE("validate_spec rejects bad horizon and budget") {
  ProblemSpec spec = ProblemSpec::homogeneous(0, 1, 1.0, 1.0);
  try {
    validate_spec(spec);
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    CHECK(err.field() == "horizon");
  }
  spec = ProblemSpec::homogeneous(3, -1, 1.0, 1.0);
  try {
    validate_spec(spec);
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    CHECK(err.field() == "budget");
  }
}

TEST_CASE("source_step examples") {
  SUBCASE("zero state and noise stay at zero") {
    const ProblemSpec spec = ProblemSpec::homogeneous(1, 1, 1.0, 1.0);
    const Vector x = Vector::Zero(1);
    CHECK(source_step(x, x, spec)(0) == 0.0);
  }
  SUBCASE("rotation and scaling") {
    ProblemSpec spec = ProblemSpec::homogeneous(1, 1, 1.0, 2.0, 2);
    spec.rotation = testing::rotation90();
    Vector x(2), noise(2);
    x << 1.0, 0.0;
    noise << 0.0, 0.0;
    const Vector y = source_step(x, noise, spec);
    CHECK(y(0) == doctest::Approx(0.0));
    CHECK(y(1) == doctest::Approx(2.0));
  }
  SUBCASE("scalar with negative lambda") {
    const ProblemSpec spec = ProblemSpec::homogeneous(1, 1, 1.0, -1.0);
    Vector x(1), noise(1);
    x << 1.0;
    noise << 0.5;
    CHECK(source_step(x, noise, spec)(0) == doctest::Approx(-0.5));
  }
  SUBCASE("dimension mismatch") {
    const ProblemSpec spec = ProblemSpec::homogeneous(1, 1, 1.0, 1.0, 2);
    CHECK_THROWS_AS(source_step(Vector::Zero(1), Vector::Zero(1), spec), std::invalid_argument);
  }
}

TEST_CASE("energy_step examples") {
  CHECK(energy_step(3, 1) == 2);
  CHECK(energy_step(3, 0) == 3);
  CHECK_THROWS_AS(energy_step(0, 1), std::invalid_argument);
}

TEST_CASE("channel examples") {
  Vector x(1);
  x << 2.5;
  CHECK(channel(x, 1).transmitted());
  CHECK(channel(x, 1).value()(0) == 2.5);
  CHECK_FALSE(channel(x, 0).transmitted());
  CHECK_THROWS_AS(channel(x, 0).value(), std::logic_error);
  const Vector zero = Vector::Zero(3);
  CHECK(channel(zero, 1).value().norm() == 0.0);
}

TEST_CASE("energy is non-increasing and nonnegative along trajectories") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    int energy = 4;
    int prev = energy;
    for (int t = 0; t < 10; ++t) {
      const int u = energy > 0 ? bit(rng) : 0;
      energy = energy_step(energy, u);
      CHECK(energy >= 0);
      CHECK(energy <= prev);
      prev = energy;
    }
  }
}

TEST_CASE("noise-free source step scales norms by |lambda|") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> lam(-2.5, 2.5);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    ProblemSpec spec = ProblemSpec::homogeneous(1, 1, 1.0, lam(rng), dim);
    spec.rotation = testing::random_orthogonal(dim, rng);
    validate_spec(spec);
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
    const Vector y = source_step(x, Vector::Zero(dim), spec);
    CHECK(y.norm() == doctest::Approx(std::abs(spec.lambda) * x.norm()).epsilon(1e-12));
  }
}

TEST_CASE("transmitting channel is lossless") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(3);
    for (int i = 0; i < 3; ++i) x(i) = gauss(rng);
    const ChannelSymbol y = channel(x, 1);
    CHECK((y.value() - x).norm() == 0.0);
  }
}
