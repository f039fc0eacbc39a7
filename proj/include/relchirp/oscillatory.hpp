#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "relchirp/received_signal.hpp"

namespace relchirp {

// Airy function of the first kind, >= 1e-10 absolute accuracy everywhere.
double airy_ai(double x);

enum class SpectrumMethod { quadrature, spa, airy };

struct SpectrumSample {
  double k = 0.0;                       // rad/m
  std::complex<double> value{0.0, 0.0};
  SpectrumMethod method = SpectrumMethod::quadrature;
};

// ---------------------------------------------------------------------------
// Brute-force oscillatory quadrature: the ground-truth oracle
// ---------------------------------------------------------------------------

// Gauss-Legendre nodes over the observation window with the phase and
// amplitude of the model precomputed. Cell count is set by the worst
// oscillation rate |K - k| over the queried wavenumbers, times the
// oversampling factor; the layout is deterministic for a given
// (model, k_grid, oversample).
struct OscillatoryGrid {
  std::vector<double> x, w, phase, amp;
};

OscillatoryGrid build_oscillatory_grid(const SignalModel& model,
                                       std::span<const double> k_grid,
                                       int oversample = 8);

// S(k) = sum_j w_j A_j exp(i (Phi_j - k x_j))
std::complex<double> eval_spectrum_at(const OscillatoryGrid& grid, double k);

std::vector<SpectrumSample> quadrature_spectrum(const SignalModel& model,
                                                std::span<const double> k_grid,
                                                int oversample = 8);

// Spectrum from an already-sampled series (composite Simpson). Refuses grids
// whose per-sample phase advance |K - k| * dctau exceeds 0.8*pi for any
// queried k; the exception carries a sufficient sample count.
std::vector<SpectrumSample> quadrature_spectrum(const ReceivedSeries& series,
                                                std::span<const double> k_grid);

// Generic windowed oscillatory integral of amp(t) * exp(i phase(t)) with a
// known bound on |d(phase)/dt|; used for the cubic-phase fixtures.
std::complex<double> oscillatory_integral(
    const std::function<double(double)>& phase,
    const std::function<double(double)>& amp, double t1, double t2,
    double max_rate, int oversample = 8);

// ---------------------------------------------------------------------------
// Cubic-phase stationary phase and Airy forms
// ---------------------------------------------------------------------------

// h(t) = a3 t^3 + b2 t^2 + c1 t evaluated against exp(i lambda h) on [t1, t2].
struct CubicPhase {
  double a3, b2, c1;
  double lambda;
  double t1, t2;

  CubicPhase(double a, double b, double c, double lam, double lo, double hi)
      : a3(a), b2(b), c1(c), lambda(lam), t1(lo), t2(hi) {
    if (!(a3 > 0.0)) throw std::invalid_argument("CubicPhase: a3 must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("CubicPhase: lambda must be > 0");
    if (!(t1 < t2)) throw std::invalid_argument("CubicPhase: t1 < t2 required");
  }

  double h(double t) const { return ((a3 * t + b2) * t + c1) * t; }
  double h_prime(double t) const { return (3.0 * a3 * t + 2.0 * b2) * t + c1; }
  double discriminant() const { return b2 * b2 - 3.0 * a3 * c1; }
  // h(t_pm) = h0 -/+ h1
  double h0() const {
    return (2.0 * b2 * b2 * b2 - 9.0 * a3 * b2 * c1) / (27.0 * a3 * a3);
  }
  double h1_abs() const {
    const double d = std::abs(discriminant());
    return 2.0 * d * std::sqrt(d) / (27.0 * a3 * a3);
  }
};

enum class SpaCase {
  two_point,
  single_point_plus,   // only the h'' > 0 root lies in the interval
  single_point_minus,  // only the h'' < 0 root lies in the interval
  boundary_only,       // no interior stationary point
  airy_routed          // near-degenerate pair, value taken from airy_cubic
};

struct SpaCubicResult {
  std::complex<double> value{0.0, 0.0};
  SpaCase kind = SpaCase::boundary_only;
  // a stationary point fell within 1e-6*(t2-t1) of an interval end; the
  // approximation is outside its uniform regime there
  bool endpoint_degenerate = false;
  double h0 = 0.0, h1 = 0.0, discriminant = 0.0;
};

// Stationary-phase value of int exp(i lambda h). Pairs closer than
// lambda*h1 < 2 are rerouted to the uniform Airy form; the optional
// boundary flag adds the order-1/lambda endpoint corrections.
SpaCubicResult spa_cubic(const CubicPhase& p, bool include_boundary_terms = false);

// Uniform value 2 pi exp(i lambda h0) Ai(-(3 lambda h1 / 2)^(2/3)) / (3 a lambda)^(1/3),
// finite at coalescence and continued to the no-real-root side (positive
// Airy argument).
std::complex<double> airy_cubic(const CubicPhase& p);

// ---------------------------------------------------------------------------
// Model spectra
// ---------------------------------------------------------------------------

// Stationary points of the jolt-phase spectrum at wavenumber k; present iff
// the log argument D k0 exp(a0^2/(2 j0)) / k exceeds 1.
struct StationaryPointsJolt {
  std::optional<double> x_plus, x_minus;
  double discriminant = 0.0;  // log(D k0 exp(a0^2/2j0) / k)
};

enum class SpaStatus {
  ok,
  caustic_use_airy,               // coalescing pair; evaluate the Airy form
  evanescent,                     // no real stationary point at this k
  no_stationary_point_in_window   // real points exist but fall outside
};

struct SpaSpectrumResult {
  SpectrumSample sample;
  SpaStatus status = SpaStatus::ok;
  SpaCase kind = SpaCase::boundary_only;
  bool endpoint_degenerate = false;
  StationaryPointsJolt points;
};

// Constant-proper-jolt spectrum: one- or two-point stationary sum with the
// received amplitude at each point. Requires j0 > 0.
SpaSpectrumResult spa_jolt_spectrum(const JoltWorldlineParams& p,
                                    const PlaneWave& wave, const Window& window,
                                    double k);

// |S(K(ctau))| along the jolt chirp: the single-point magnitude with the
// wavenumber function substituted. Requires a0 > 0 and j0 > 0.
double jolt_spectrum_envelope(const JoltWorldlineParams& p,
                              const PlaneWave& wave, double ctau);

// Constant-proper-acceleration spectrum (amplitude-weighted single point,
// comparable to the quadrature oracle). Requires a0 > 0, j0 = 0.
SpaSpectrumResult spa_accel_spectrum(const JoltWorldlineParams& p,
                                     const PlaneWave& wave, const Window& window,
                                     double k);

// The phase-only acceleration magnitude E0 sqrt(2 pi / (a0 k)); satisfies
// |S| sqrt(k) = const across the band.
double accel_spectrum_flat_magnitude(const JoltWorldlineParams& p,
                                     const PlaneWave& wave, double k);

// Cubic-path spectrum via the quadratic wavenumber function. Requires
// alpha.w != 0. Signals the evanescent side and the caustic neighbourhood
// (k0 h1 < 1) instead of returning a near-singular value.
SpaSpectrumResult spa_fs_spectrum(const AlphaW& aw, const FSParams& params,
                                  const PlaneWave& wave, const Window& window,
                                  double k);

// Uniform Airy spectrum, finite across the critical wavenumber: oscillatory
// fringes on the two-point side, exponential decay beyond.
SpectrumSample airy_fs_spectrum(const AlphaW& aw, const FSParams& params,
                                const PlaneWave& wave, double k);

}  // namespace relchirp
