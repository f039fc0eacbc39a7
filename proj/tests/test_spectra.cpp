#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchirp/oscillatory.hpp"
#include "relchirp/validation.hpp"

using namespace relchirp;

namespace {

std::vector<double> central_band_grid(const SignalModel& m, std::size_t n) {
  const KBand band = wavenumber_range(m);
  const double width = band.k_max - band.k_min;
  std::vector<double> ks(n);
  for (std::size_t i = 0; i < n; ++i) {
    ks[i] = band.k_min + width * (0.1 + 0.8 * static_cast<double>(i) /
                                            static_cast<double>(n - 1));
  }
  return ks;
}

}  // namespace

TEST_CASE("jolt spectrum magnitude matches the closed amplitude form and oracle") {
  const JoltWorldlineParams p = fixtures::jolt();
  const PlaneWave wave = fixtures::band_wave();
  const Window window = fixtures::window();
  const SignalModel m = make_jolt_model(p, wave, window);
  const auto ks = central_band_grid(m, 33);
  const auto oracle = quadrature_spectrum(m, ks, 8);
  const double d = doppler_factor(p.beta);
  const double k0 = wave.k0();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto r = spa_jolt_spectrum(p, wave, window, ks[i]);
    REQUIRE(r.status == SpaStatus::ok);
    // printed closed form for the single-point magnitude
    const double log_arg = std::log(d * k0 / ks[i]) + p.a0 * p.a0 / (2.0 * p.j0);
    const double printed =
        wave.e0 * std::pow(2.0 * kPi * kPi * ks[i] * ks[i] /
                               (k0 * k0 * k0 * k0 * p.j0 * log_arg),
                           0.25);
    CHECK(std::abs(r.sample.value) == doctest::Approx(printed).epsilon(1e-12));
    CHECK(std::abs(std::abs(r.sample.value) - std::abs(oracle[i].value)) <=
          0.05 * std::abs(oracle[i].value));
  }
}

TEST_CASE("acceleration spectrum matches the oracle over the central band") {
  const JoltWorldlineParams p = fixtures::accel();
  const PlaneWave wave = fixtures::band_wave();
  const Window window = fixtures::window();
  const SignalModel m = make_accel_model(p, wave, window);
  const auto ks = central_band_grid(m, 33);
  const auto oracle = quadrature_spectrum(m, ks, 8);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto r = spa_accel_spectrum(p, wave, window, ks[i]);
    REQUIRE(r.status == SpaStatus::ok);
    CHECK(std::abs(std::abs(r.sample.value) - std::abs(oracle[i].value)) <=
          0.05 * std::abs(oracle[i].value));
  }
}

TEST_CASE("cubic-path spectrum matches the oracle over the central band") {
  const FSParams p = fixtures::fs_monotone();
  const PlaneWave wave = fixtures::band_wave();
  const Window window = fixtures::window();
  const SignalModel m = make_fs_model(p, FSFrame{}, wave, window);
  const AlphaW aw = alpha_w(wave, FSFrame{}, p);
  const auto ks = central_band_grid(m, 33);
  const auto oracle = quadrature_spectrum(m, ks, 8);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto r = spa_fs_spectrum(aw, p, wave, window, ks[i]);
    REQUIRE(r.status == SpaStatus::ok);
    CHECK(r.kind == SpaCase::single_point_minus);
    CHECK(std::abs(std::abs(r.sample.value) - std::abs(oracle[i].value)) <=
          0.05 * std::abs(oracle[i].value));
  }
}

TEST_CASE("non-monotone cubic path: Airy tracks the oracle through the caustic") {
  const FSParams p = fixtures::fs_turning();
  const PlaneWave wave = fixtures::band_wave();
  const Window window = fixtures::window();
  const SignalModel m = make_fs_model(p, FSFrame{}, wave, window);
  const AlphaW aw = alpha_w(wave, FSFrame{}, p);
  const double k_c = *factors(m, window.ctau_f).k_c;

  // a neighbourhood of the caustic covering decay side, peak, first fringes
  std::vector<double> ks;
  for (int i = -8; i <= 40; ++i) ks.push_back(k_c + 5.0 * i);
  const auto oracle = quadrature_spectrum(m, ks, 8);
  double peak = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto airy = airy_fs_spectrum(aw, p, wave, ks[i]);
    peak = std::max(peak, std::abs(oracle[i].value));
    worst = std::max(worst, std::abs(airy.value - oracle[i].value));
  }
  // uniform agreement at the few-percent level relative to the caustic peak
  CHECK(worst <= 0.05 * peak);
}

TEST_CASE("validation battery passes clean and fails under the fault hook") {
  CheckOptions options;
  options.only = {"kinematics"};
  const auto clean = run_acceptance_checks(options);
  REQUIRE(clean.size() == 1);
  CHECK(clean[0].pass);

  options.perturb = Perturbation::j0_sign_flip;
  const auto perturbed = run_acceptance_checks(options);
  REQUIRE(perturbed.size() == 1);
  CHECK_FALSE(perturbed[0].pass);
  // the fault shows up as the |sigma| = j0 invariant breaking by 2 j0
  CHECK(perturbed[0].measured == doctest::Approx(0.04).epsilon(1e-6));
}
