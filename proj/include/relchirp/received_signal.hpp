#pragma once

#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "relchirp/frenet_serret.hpp"
#include "relchirp/kinematics.hpp"
#include "relchirp/minkowski.hpp"

namespace relchirp {

// Observation interval [ctau_i, ctau_f] in meters; closed on both ends.
struct Window {
  double ctau_i;
  double ctau_f;

  Window(double i, double f) : ctau_i(i), ctau_f(f) {
    if (!(ctau_i < ctau_f)) {
      throw std::invalid_argument("Window: require ctau_i < ctau_f");
    }
  }
  double length() const { return ctau_f - ctau_i; }
};

// Motion variants of the received-signal model.
struct JoltExact {
  JoltWorldlineParams params;
};

struct AccelExact {
  JoltWorldlineParams params;  // j0 must be exactly zero

  explicit AccelExact(const JoltWorldlineParams& p) : params(p) {
    if (params.j0 != 0.0) {
      throw std::invalid_argument("AccelExact: j0 must be exactly 0");
    }
  }
};

struct FSQuadratic {
  FSParams params;
  FSFrame frame0;
  AlphaW alpha;
};

// Phase/amplitude law of the received signal over an observation window.
struct SignalModel {
  std::variant<JoltExact, AccelExact, FSQuadratic> motion;
  PlaneWave wave;
  Window window;
};

SignalModel make_jolt_model(const JoltWorldlineParams& p, const PlaneWave& w,
                            const Window& win);
SignalModel make_accel_model(const JoltWorldlineParams& p, const PlaneWave& w,
                             const Window& win);
SignalModel make_fs_model(const FSParams& p, const FSFrame& frame0,
                          const PlaneWave& w, const Window& win);

// --- per-model closed forms -------------------------------------------------

struct PhaseSample {
  double phase;       // rad, referenced so Phi(0) matches each closed form
  double wavenumber;  // rad/m, d(phase)/d(ctau)
  double amplitude;   // signal units
};

// Jolt worldline: Phi = k0 D int_0^ctau exp(-omega), K = D k0 exp(-omega),
// A = D exp(-omega) E0. The phase integral has no elementary antiderivative
// and is evaluated by adaptive quadrature.
PhaseSample phase_wavenumber_amplitude_jolt(const JoltWorldlineParams& p,
                                            const PlaneWave& wave, double ctau);

// Constant proper acceleration: Phi = -(k0 D / a0) exp(-a0 ctau),
// K = k0 D exp(-a0 ctau). The integration constant of the closed form is
// kept, so Phi(0) = -k0 D / a0. Requires a0 > 0; for a0 = 0 use the jolt
// form with both parameters zero.
std::pair<double, double> phase_wavenumber_accel(const JoltWorldlineParams& p,
                                                 const PlaneWave& wave,
                                                 double ctau);

// Cubic-in-time phase of the third-order path expansion:
//   Phi = k0 [ a0*(ct + k1^2 ct^3/6) + a1*(k1 ct^2/2 + k1' ct^3/6)
//              + a2 k1 k2 ct^3/6 ]          (a_nu = alpha components)
//   K   = k0 [ (alpha.w) ct^2/2 + alpha1 k1 ct + alpha0 ]
std::pair<double, double> phase_wavenumber_fs(const AlphaW& aw,
                                              const FSParams& params,
                                              const PlaneWave& wave, double ctau);

// Model-dispatching accessors used by the spectrum engines.
double wavenumber_at(const SignalModel& m, double ctau);
double amplitude_at(const SignalModel& m, double ctau);
// Phase on a sorted grid; the jolt quadrature is evaluated cumulatively.
std::vector<double> phase_profile(const SignalModel& m,
                                  std::span<const double> sorted_ctau);

struct KBand {
  double k_min, k_max;  // range of the wavenumber function over the window
};
KBand wavenumber_range(const SignalModel& m);

// --- closed-form ratios -------------------------------------------------------

// Wavenumber and amplitude ratios between the ends of the window, per model.
// Absent fields do not apply to the model (e.g. D_j is meaningless at j0 = 0;
// use D_a instead). eta is the jolt ratio j0 ctau_f / a0 + 1 for jolt models
// and (alpha.w / (alpha1 k1)) ctau_f + 1 for FS models.
struct Factors {
  std::optional<double> D;
  std::optional<double> D_a, A_a;
  std::optional<double> eta, D_j, A_j;
  std::optional<double> D_FS, A_FS, k_c;
};

Factors factors(const SignalModel& m, double ctau_f);

// --- series synthesis -------------------------------------------------------

// Sampled received signal A exp(i Phi) on a uniform ctau grid.
struct ReceivedSeries {
  std::vector<double> ctau;        // m, sorted uniform grid
  std::vector<double> phase;       // rad
  std::vector<double> wavenumber;  // rad/m
  std::vector<double> amplitude;   // > 0
  std::vector<std::complex<double>> signal;
};

class nyquist_error : public std::runtime_error {
 public:
  nyquist_error(const std::string& what, std::size_t required)
      : std::runtime_error(what), required_samples(required) {}
  std::size_t required_samples;
};

// Refuses grids where the phase advances more than 0.8*pi per sample; the
// exception carries the sample count that would satisfy the guard.
ReceivedSeries synthesize(const SignalModel& m, std::size_t samples);

// --- wavenumber monotonicity --------------------------------------------------

enum class MonotonicityKind {
  constant,
  monotone_decreasing,
  monotone_increasing,
  turning_point
};

struct Monotonicity {
  MonotonicityKind kind;
  std::optional<double> ctau_star;  // where dK/dctau vanishes, if in window
  std::optional<double> k_at_star;  // K at the turning point (the critical k)
};

Monotonicity monotonicity(const SignalModel& m);

}  // namespace relchirp
