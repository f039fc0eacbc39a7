#pragma once

#include <string>
#include <vector>

#include "relchirp/received_signal.hpp"

namespace relchirp {

// Canonical fixtures shared by the validation battery and the test suites.
namespace fixtures {

inline JoltWorldlineParams jolt() { return {0.1, 0.05, 0.02, 0.0}; }
inline JoltWorldlineParams accel() { return {0.1, 0.05, 0.0, 0.0}; }
inline FSParams fs_monotone() { return {0.05, 0.01, 0.0, 0.02, 0.0, 0.0}; }
// alpha.w = 0.1 for the +x wave and rest frame; wavenumber minimum at 0.5
inline FSParams fs_turning() { return {0.05, -0.0975, 0.0, 0.0, 0.0, 0.0}; }
inline Window window() { return Window(0.0, 1.0); }

// Reference carrier for kinematic-scale and classical-Doppler checks.
inline PlaneWave reference_wave() { return PlaneWave(1e9, {1.0, 0.0, 0.0}, 1.0); }
// Spectrum-comparison carrier: k0 ~ 4e5 rad/m puts the shifted band deep in
// the stationary-phase regime (central-band deviations ~2-3%).
inline PlaneWave band_wave() { return PlaneWave(2e13, {1.0, 0.0, 0.0}, 1.0); }

}  // namespace fixtures

// Fault injected by the validate command's negative-control hook: the jolt
// fixture's j0 changes sign, which breaks the |sigma| = j0 check while every
// sign-insensitive invariant still passes.
enum class Perturbation { none, j0_sign_flip };

struct CheckOptions {
  Perturbation perturb = Perturbation::none;
  // run only checks whose id starts with one of these prefixes (empty: all)
  std::vector<std::string> only;
  int oversample = 8;
  unsigned workers = 0;
};

struct CheckResult {
  std::string id;
  std::string description;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string detail;
};

std::vector<CheckResult> run_acceptance_checks(const CheckOptions& options = {});

std::string checks_to_json(const std::vector<CheckResult>& results);

}  // namespace relchirp
