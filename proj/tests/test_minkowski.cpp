#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relchirp/minkowski.hpp"

using namespace relchirp;

TEST_CASE("minkowski_dot on unit and null vectors") {
  CHECK(minkowski_dot({1, 0, 0, 0}, {1, 0, 0, 0}) == doctest::Approx(-1.0));
  CHECK(minkowski_dot({0, 1, 0, 0}, {0, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(minkowski_dot({1, 1, 0, 0}, {1, 1, 0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("minkowski_dot is symmetric and bilinear") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  auto rand_vec = [&] {
    return FourVector(dist(rng), dist(rng), dist(rng), dist(rng));
  };
  for (int i = 0; i < 200; ++i) {
    const FourVector a = rand_vec(), b = rand_vec(), c = rand_vec();
    const double s = dist(rng), t = dist(rng);
    CHECK(minkowski_dot(a, b) == doctest::Approx(minkowski_dot(b, a)));
    CHECK(minkowski_dot(s * a + t * b, c) ==
          doctest::Approx(s * minkowski_dot(a, c) + t * minkowski_dot(b, c))
              .epsilon(1e-12));
  }
}

TEST_CASE("FourVector rejects non-finite components") {
  CHECK_THROWS_AS(FourVector(std::nan(""), 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(FourVector(0, std::numeric_limits<double>::infinity(), 0, 0),
                  std::invalid_argument);
}

TEST_CASE("doppler_factor values and reciprocity") {
  CHECK(doppler_factor(0.0) == doctest::Approx(1.0));
  CHECK(doppler_factor(0.6) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(doppler_factor(-0.6) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(doppler_factor(1.0), std::domain_error);
  CHECK_THROWS_AS(doppler_factor(-1.2), std::domain_error);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-0.95, 0.95);
  for (int i = 0; i < 100; ++i) {
    const double beta = dist(rng);
    CHECK(doppler_factor(beta) * doppler_factor(-beta) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("wave_covector components and contraction") {
  const PlaneWave wx(1e9, {1, 0, 0}, 1.0);
  const FourVector kx = wave_covector(wx);
  CHECK(kx[0] == 1.0);
  CHECK(kx[1] == -1.0);
  CHECK(kx[2] == 0.0);
  CHECK(kx[3] == 0.0);

  const PlaneWave wz(1e9, {0, 0, 1}, 1.0);
  const FourVector kz = wave_covector(wz);
  CHECK(kz[0] == 1.0);
  CHECK(kz[3] == -1.0);

  // a receiver riding the wavefront accumulates no phase
  const double ct = 3.7;
  CHECK(contract(kx, {ct, ct, 0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("PlaneWave validation and k0") {
  CHECK_THROWS_AS(PlaneWave(0.0, {1, 0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PlaneWave(1e9, {1, 1e-3, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PlaneWave(1e9, {1, 0, 0}, 0.0), std::invalid_argument);
  const PlaneWave w(1e9, {1, 0, 0}, 1.0);
  CHECK(w.k0() == doctest::Approx(2.0 * kPi * 1e9 / kSpeedOfLight));
}

TEST_CASE("identity tetrad is orthonormal") {
  const Tetrad t;
  CHECK(t.gram_deviation() <= 1e-15);
  CHECK(t.is_orthonormal());
}

TEST_CASE("boost tetrad is orthonormal") {
  const double beta = 0.6;
  const double g = 1.0 / std::sqrt(1.0 - beta * beta);
  const Tetrad t(FourVector(g, g * beta, 0, 0), FourVector(g * beta, g, 0, 0),
                 FourVector(0, 0, 1, 0), FourVector(0, 0, 0, 1));
  CHECK(t.gram_deviation() <= 1e-14);
}
