#include "relchirp/oscillatory.hpp"

#include <algorithm>
#include <cmath>

#include "relchirp/quadrature.hpp"

namespace relchirp {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// exp(+/- i pi/4)
const std::complex<double> kPhasePlus(0.7071067811865475244, 0.7071067811865475244);
const std::complex<double> kPhaseMinus(0.7071067811865475244, -0.7071067811865475244);

// 7-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlX[7] = {-0.9491079123427585, -0.7415311855993944,
                            -0.4058451513773972, 0.0,
                            0.4058451513773972,  0.7415311855993944,
                            0.9491079123427585};
constexpr double kGlW[7] = {0.1294849661688697, 0.2797053914892767,
                            0.3818300505051189, 0.4179591836734694,
                            0.3818300505051189, 0.2797053914892767,
                            0.1294849661688697};

// With `oversample` cells per 2*pi of worst-case phase advance, each cell sees
// at most 2*pi/oversample radians; the 7-point rule integrates that to near
// machine precision, so refinement changes results only at roundoff level.
std::size_t cell_count(double max_rate, double length, int oversample) {
  if (oversample < 1) throw std::invalid_argument("oversample must be >= 1");
  const double cells = static_cast<double>(oversample) * max_rate * length / kTwoPi;
  constexpr double kMaxCells = 8e6;
  if (cells > kMaxCells) {
    throw std::invalid_argument(
        "oscillatory quadrature: grid would need " + std::to_string(cells) +
        " cells; reduce the swept band or the oversampling factor");
  }
  return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(cells)));
}

std::complex<double> weighted_sum(std::span<const double> x,
                                  std::span<const double> w,
                                  std::span<const double> phase,
                                  std::span<const double> amp, double k) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double arg = phase[j] - k * x[j];
    const double wa = w[j] * amp[j];
    re += wa * std::cos(arg);
    im += wa * std::sin(arg);
  }
  return {re, im};
}

}  // namespace

OscillatoryGrid build_oscillatory_grid(const SignalModel& model,
                                       std::span<const double> k_grid,
                                       int oversample) {
  const KBand band = wavenumber_range(model);
  double max_rate = 1.0;
  for (double k : k_grid) {
    max_rate = std::max(max_rate,
                        std::max(std::abs(k - band.k_min), std::abs(k - band.k_max)));
  }
  const double len = model.window.length();
  const std::size_t cells = cell_count(max_rate, len, oversample);
  const double dc = len / static_cast<double>(cells);

  OscillatoryGrid g;
  g.x.reserve(cells * 7);
  g.w.reserve(cells * 7);
  for (std::size_t c = 0; c < cells; ++c) {
    const double lo = model.window.ctau_i + static_cast<double>(c) * dc;
    const double mid = lo + 0.5 * dc;
    for (int j = 0; j < 7; ++j) {
      g.x.push_back(mid + 0.5 * dc * kGlX[j]);
      g.w.push_back(0.5 * dc * kGlW[j]);
    }
  }
  g.phase = phase_profile(model, g.x);
  g.amp.reserve(g.x.size());
  for (double t : g.x) g.amp.push_back(amplitude_at(model, t));
  return g;
}

std::complex<double> eval_spectrum_at(const OscillatoryGrid& grid, double k) {
  return weighted_sum(grid.x, grid.w, grid.phase, grid.amp, k);
}

std::vector<SpectrumSample> quadrature_spectrum(const SignalModel& model,
                                                std::span<const double> k_grid,
                                                int oversample) {
  const OscillatoryGrid grid = build_oscillatory_grid(model, k_grid, oversample);
  std::vector<SpectrumSample> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    out.push_back({k, eval_spectrum_at(grid, k), SpectrumMethod::quadrature});
  }
  return out;
}

std::vector<SpectrumSample> quadrature_spectrum(const ReceivedSeries& series,
                                                std::span<const double> k_grid) {
  const std::size_t n = series.ctau.size();
  if (n < 4) throw std::invalid_argument("quadrature_spectrum: series too short");
  const double dt = series.ctau[1] - series.ctau[0];
  const double len = series.ctau.back() - series.ctau.front();

  double max_rate = 0.0;
  for (double k : k_grid) {
    for (double kk : series.wavenumber) {
      max_rate = std::max(max_rate, std::abs(kk - k));
    }
  }
  if (max_rate * dt > 0.8 * kPi) {
    const auto required =
        static_cast<std::size_t>(std::ceil(max_rate * len / (0.8 * kPi))) + 1;
    throw nyquist_error(
        "quadrature_spectrum: series undersampled for the queried band; need >= " +
            std::to_string(required) + " samples",
        required);
  }

  // Composite Simpson weights; a 3/8 block handles an odd interval count.
  std::vector<double> w(n, 0.0);
  std::size_t simpson_end = n;  // points [0, simpson_end) use plain Simpson
  if ((n - 1) % 2 != 0) {
    simpson_end = n - 3;
    w[n - 4] += 3.0 / 8.0 * dt;
    w[n - 3] += 9.0 / 8.0 * dt;
    w[n - 2] += 9.0 / 8.0 * dt;
    w[n - 1] += 3.0 / 8.0 * dt;
  }
  if (simpson_end >= 3) {
    w[0] += dt / 3.0;
    w[simpson_end - 1] += dt / 3.0;
    for (std::size_t i = 1; i + 1 < simpson_end; ++i) {
      w[i] += (i % 2 == 1 ? 4.0 : 2.0) * dt / 3.0;
    }
  }

  std::vector<SpectrumSample> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      acc += w[j] * series.signal[j] *
             std::exp(std::complex<double>(0.0, -k * series.ctau[j]));
    }
    out.push_back({k, acc, SpectrumMethod::quadrature});
  }
  return out;
}

std::complex<double> oscillatory_integral(
    const std::function<double(double)>& phase,
    const std::function<double(double)>& amp, double t1, double t2,
    double max_rate, int oversample) {
  if (!(t2 > t1)) throw std::invalid_argument("oscillatory_integral: t1 < t2");
  const std::size_t cells = cell_count(std::max(max_rate, 1.0), t2 - t1, oversample);
  const double dc = (t2 - t1) / static_cast<double>(cells);
  double re = 0.0, im = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double mid = t1 + (static_cast<double>(c) + 0.5) * dc;
    for (int j = 0; j < 7; ++j) {
      const double t = mid + 0.5 * dc * kGlX[j];
      const double wa = 0.5 * dc * kGlW[j] * amp(t);
      const double ph = phase(t);
      re += wa * std::cos(ph);
      im += wa * std::sin(ph);
    }
  }
  return {re, im};
}

// ---------------------------------------------------------------------------
// Cubic phase
// ---------------------------------------------------------------------------

namespace {

// Single stationary-point contribution sqrt(2 pi / (lambda |h''|)) with the
// +/- pi/4 phase from the principal branch of sqrt(-i lambda h'').
std::complex<double> stationary_term(double lambda, double h_value,
                                     double h_second) {
  const double mag = std::sqrt(kTwoPi / (lambda * std::abs(h_second)));
  const std::complex<double> eighth = h_second > 0.0 ? kPhasePlus : kPhaseMinus;
  return mag * eighth * std::exp(std::complex<double>(0.0, lambda * h_value));
}

}  // namespace

SpaCubicResult spa_cubic(const CubicPhase& p, bool include_boundary_terms) {
  SpaCubicResult r;
  r.discriminant = p.discriminant();
  r.h0 = p.h0();
  r.h1 = p.h1_abs();

  // Coalescing or nearly coalescing pair: the two-point form diverges as
  // disc^(-1/4); hand over to the uniform approximation.
  if (p.lambda * r.h1 < 2.0) {
    r.kind = SpaCase::airy_routed;
    r.value = airy_cubic(p);
    return r;
  }

  const double eps = 1e-6 * (p.t2 - p.t1);
  std::complex<double> acc(0.0, 0.0);
  bool has_plus = false, has_minus = false;

  if (r.discriminant > 0.0) {
    const double root = std::sqrt(r.discriminant);
    const double t_minus = (-p.b2 - root) / (3.0 * p.a3);
    const double t_plus = (-p.b2 + root) / (3.0 * p.a3);
    for (double t : {t_minus, t_plus}) {
      if (t < p.t1 || t > p.t2) continue;
      if (t - p.t1 < eps || p.t2 - t < eps) r.endpoint_degenerate = true;
      const double h2 = 6.0 * p.a3 * t + 2.0 * p.b2;
      acc += stationary_term(p.lambda, p.h(t), h2);
      (h2 > 0.0 ? has_plus : has_minus) = true;
    }
  }

  if (has_plus && has_minus) {
    r.kind = SpaCase::two_point;
  } else if (has_plus) {
    r.kind = SpaCase::single_point_plus;
  } else if (has_minus) {
    r.kind = SpaCase::single_point_minus;
  } else {
    r.kind = SpaCase::boundary_only;
  }

  if (include_boundary_terms) {
    // Endpoint corrections from one integration by parts,
    //   exp(i lambda h(T)) / (i lambda h'(T))  evaluated T1 -> T2.
    const std::complex<double> i_unit(0.0, 1.0);
    for (int side = 0; side < 2; ++side) {
      const double t = side == 0 ? p.t1 : p.t2;
      const double hp = p.h_prime(t);
      if (std::abs(hp) * (p.t2 - p.t1) < 1e-12) {
        r.endpoint_degenerate = true;
        continue;
      }
      const std::complex<double> term =
          std::exp(std::complex<double>(0.0, p.lambda * p.h(t))) /
          (i_unit * p.lambda * hp);
      acc += side == 0 ? -term : term;
    }
  }

  r.value = acc;
  return r;
}

std::complex<double> airy_cubic(const CubicPhase& p) {
  const double disc = p.discriminant();
  const double h1 = p.h1_abs();
  const double xi = -std::copysign(
      std::pow(1.5 * p.lambda * h1, 2.0 / 3.0), disc);
  const double scale = kTwoPi / std::cbrt(3.0 * p.a3 * p.lambda);
  return scale * airy_ai(xi) *
         std::exp(std::complex<double>(0.0, p.lambda * p.h0()));
}

// ---------------------------------------------------------------------------
// Jolt and acceleration spectra
// ---------------------------------------------------------------------------

SpaSpectrumResult spa_jolt_spectrum(const JoltWorldlineParams& p,
                                    const PlaneWave& wave, const Window& window,
                                    double k) {
  if (!(p.j0 > 0.0)) {
    throw std::invalid_argument("spa_jolt_spectrum: requires j0 > 0");
  }
  if (!(k > 0.0)) {
    throw std::invalid_argument("spa_jolt_spectrum: requires k > 0");
  }
  const double d = doppler_factor(p.beta);
  const double k0 = wave.k0();

  SpaSpectrumResult r;
  r.sample = {k, {0.0, 0.0}, SpectrumMethod::spa};

  // log(D k0 exp(a0^2/2j0) / k); stationary points exist iff positive.
  const double log_arg = std::log(d * k0 / k) + p.a0 * p.a0 / (2.0 * p.j0);
  r.points.discriminant = log_arg;
  if (!(log_arg > 0.0)) {
    r.status = SpaStatus::evanescent;
    return r;
  }
  const double half_sep = std::sqrt(2.0 * log_arg / p.j0);
  const double x_plus = -p.a0 / p.j0 + half_sep;
  const double x_minus = -p.a0 / p.j0 - half_sep;
  r.points.x_plus = x_plus;
  r.points.x_minus = x_minus;

  const double eps = 1e-6 * window.length();
  const double amp = k / k0 * wave.e0;           // received amplitude at K = k
  const double curvature = k * p.j0 * half_sep;  // |d2(phase)/dctau2|

  struct Term {
    double x;
    double h2_sign;
  };
  std::vector<Term> terms;
  for (double x : {x_minus, x_plus}) {
    if (x < window.ctau_i || x > window.ctau_f) continue;
    if (x - window.ctau_i < eps || window.ctau_f - x < eps) {
      r.endpoint_degenerate = true;
    }
    // d2(phase)/dctau2 = -omega'(x) K; omega'(x_plus) > 0 > omega'(x_minus)
    terms.push_back({x, x == x_plus ? -1.0 : 1.0});
  }
  if (terms.empty()) {
    r.status = SpaStatus::no_stationary_point_in_window;
    return r;
  }

  std::complex<double> acc(0.0, 0.0);
  std::vector<double> total_phases;
  for (const Term& t : terms) {
    const double q = integrate_adaptive(
        [&](double s) { return std::exp(-omega(p, s)); }, 0.0, t.x,
        1e-14 * std::max(1.0, std::abs(t.x)));
    const double total_phase = k0 * d * q - k * t.x;
    total_phases.push_back(total_phase);
    const double mag = amp * std::sqrt(kTwoPi / curvature);
    const std::complex<double> eighth =
        t.h2_sign > 0.0 ? kPhasePlus : kPhaseMinus;
    acc += mag * eighth * std::exp(std::complex<double>(0.0, total_phase));
  }

  if (terms.size() == 2) {
    // Coalescing pair inside the window: the two-point sum is out of its
    // regime once the phase separation shrinks below ~2 radians.
    if (std::abs(total_phases[1] - total_phases[0]) < 2.0) {
      r.status = SpaStatus::caustic_use_airy;
      r.sample.value = {0.0, 0.0};
      return r;
    }
    r.kind = SpaCase::two_point;
  } else {
    r.kind = terms[0].h2_sign > 0.0 ? SpaCase::single_point_plus
                                    : SpaCase::single_point_minus;
  }
  r.sample.value = acc;
  return r;
}

double jolt_spectrum_envelope(const JoltWorldlineParams& p,
                              const PlaneWave& wave, double ctau) {
  if (!(p.j0 > 0.0) || !(p.a0 > 0.0)) {
    throw std::invalid_argument("jolt_spectrum_envelope: requires a0, j0 > 0");
  }
  const double d = doppler_factor(p.beta);
  const double k0 = wave.k0();
  const double w = omega(p, ctau);
  const double denom =
      0.5 * p.j0 * ctau * ctau + p.a0 * ctau + p.a0 * p.a0 / (2.0 * p.j0);
  return wave.e0 *
         std::pow(2.0 * kPi * kPi * d * d / (k0 * k0 * p.j0), 0.25) *
         std::exp(-0.5 * w) / std::pow(denom, 0.25);
}

SpaSpectrumResult spa_accel_spectrum(const JoltWorldlineParams& p,
                                     const PlaneWave& wave, const Window& window,
                                     double k) {
  if (!(p.a0 > 0.0) || p.j0 != 0.0) {
    throw std::invalid_argument("spa_accel_spectrum: requires a0 > 0 and j0 = 0");
  }
  if (!(k > 0.0)) {
    throw std::invalid_argument("spa_accel_spectrum: requires k > 0");
  }
  const double d = doppler_factor(p.beta);
  const double k0 = wave.k0();

  SpaSpectrumResult r;
  r.sample = {k, {0.0, 0.0}, SpectrumMethod::spa};

  // K(x) = k at x = log(D k0 / k) / a0, single stationary point.
  const double x = std::log(d * k0 / k) / p.a0;
  if (x < window.ctau_i || x > window.ctau_f) {
    r.status = SpaStatus::no_stationary_point_in_window;
    return r;
  }
  const double eps = 1e-6 * window.length();
  if (x - window.ctau_i < eps || window.ctau_f - x < eps) {
    r.endpoint_degenerate = true;
  }

  const double amp = k / k0 * wave.e0;
  const double mag = amp * std::sqrt(kTwoPi / (p.a0 * k));
  const double phase = -k0 * d / p.a0 * std::exp(-p.a0 * x) - k * x;
  // d2(phase)/dctau2 = -a0 K < 0, so the eighth-turn factor is exp(-i pi/4)
  r.sample.value =
      mag * kPhaseMinus * std::exp(std::complex<double>(0.0, phase));
  r.kind = SpaCase::single_point_minus;
  return r;
}

double accel_spectrum_flat_magnitude(const JoltWorldlineParams& p,
                                     const PlaneWave& wave, double k) {
  if (!(p.a0 > 0.0) || !(k > 0.0)) {
    throw std::invalid_argument(
        "accel_spectrum_flat_magnitude: requires a0 > 0 and k > 0");
  }
  return wave.e0 * std::sqrt(kTwoPi / (p.a0 * k));
}

// ---------------------------------------------------------------------------
// Cubic-path spectra
// ---------------------------------------------------------------------------

namespace {

struct FsSpaGeometry {
  double k0;
  double radicand;  // alpha1^2 k1^2 k0 + 2 (alpha.w) (k - alpha0 k0)
  double h1_abs;    // |radicand|^(3/2) / (3 k0^(3/2) (alpha.w)^2)
  double h0;
};

FsSpaGeometry fs_geometry(const AlphaW& aw, const FSParams& params,
                          const PlaneWave& wave, double k) {
  FsSpaGeometry g;
  g.k0 = wave.k0();
  const double a1k1 = aw.alpha[1] * params.kappa1;
  const double adw = aw.alpha_dot_w;
  g.radicand = a1k1 * a1k1 * g.k0 + 2.0 * adw * (k - aw.alpha[0] * g.k0);
  const double abs_r = std::abs(g.radicand);
  g.h1_abs = abs_r * std::sqrt(abs_r) / (3.0 * g.k0 * std::sqrt(g.k0) * adw * adw);
  g.h0 = a1k1 * (a1k1 * a1k1 * g.k0 + 3.0 * adw * (k - aw.alpha[0] * g.k0)) /
         (3.0 * g.k0 * adw * adw);
  return g;
}

}  // namespace

SpaSpectrumResult spa_fs_spectrum(const AlphaW& aw, const FSParams& params,
                                  const PlaneWave& wave, const Window& window,
                                  double k) {
  if (aw.alpha_dot_w == 0.0) {
    throw std::invalid_argument("spa_fs_spectrum: requires alpha.w != 0");
  }
  const FsSpaGeometry g = fs_geometry(aw, params, wave, k);

  SpaSpectrumResult r;
  r.sample = {k, {0.0, 0.0}, SpectrumMethod::spa};

  // Within roughly one radian of stationary-phase separation of the critical
  // wavenumber the (k0 R)^(-1/4) prefactor is near its divergence; signal the
  // caller to use the uniform Airy form there.
  if (g.k0 * g.h1_abs < 1.0) {
    r.status = SpaStatus::caustic_use_airy;
    return r;
  }
  if (g.radicand < 0.0) {
    r.status = SpaStatus::evanescent;
    return r;
  }

  const double adw = aw.alpha_dot_w;
  const double a1k1 = aw.alpha[1] * params.kappa1;
  const double root = std::sqrt(g.radicand / g.k0);
  const double x_plus = (-a1k1 + root) / adw;   // d2(phase) > 0 here
  const double x_minus = (-a1k1 - root) / adw;  // d2(phase) < 0 here

  const double eps = 1e-6 * window.length();
  const double denom = std::pow(g.k0 * g.radicand, 0.25);
  std::complex<double> acc(0.0, 0.0);
  bool has_plus = false, has_minus = false;
  for (double x : {x_minus, x_plus}) {
    if (x < window.ctau_i || x > window.ctau_f) continue;
    if (x - window.ctau_i < eps || window.ctau_f - x < eps) {
      r.endpoint_degenerate = true;
    }
    const bool plus = (x == x_plus);
    const double phase = phase_wavenumber_fs(aw, params, wave, x).first - k * x;
    acc += wave.e0 * std::sqrt(kTwoPi) / denom *
           (plus ? kPhasePlus : kPhaseMinus) *
           std::exp(std::complex<double>(0.0, phase));
    (plus ? has_plus : has_minus) = true;
  }
  if (!has_plus && !has_minus) {
    r.status = SpaStatus::no_stationary_point_in_window;
    return r;
  }
  r.kind = has_plus && has_minus
               ? SpaCase::two_point
               : (has_plus ? SpaCase::single_point_plus
                           : SpaCase::single_point_minus);
  r.sample.value = acc;
  return r;
}

SpectrumSample airy_fs_spectrum(const AlphaW& aw, const FSParams& params,
                                const PlaneWave& wave, double k) {
  if (aw.alpha_dot_w == 0.0) {
    throw std::invalid_argument("airy_fs_spectrum: requires alpha.w != 0");
  }
  const FsSpaGeometry g = fs_geometry(aw, params, wave, k);
  // Negative alpha.w mirrors ctau -> -ctau so the cubic coefficient of the
  // phase is positive; h0 is even under the mirror and the scale uses |alpha.w|.
  const double xi =
      -std::copysign(std::pow(1.5 * g.k0 * g.h1_abs, 2.0 / 3.0), g.radicand);
  const double scale =
      kTwoPi / std::cbrt(std::abs(aw.alpha_dot_w) * g.k0 / 2.0);
  const std::complex<double> value =
      wave.e0 * scale * airy_ai(xi) *
      std::exp(std::complex<double>(0.0, g.k0 * g.h0));
  return {k, value, SpectrumMethod::airy};
}

}  // namespace relchirp
