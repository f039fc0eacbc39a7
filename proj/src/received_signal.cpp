#include "relchirp/received_signal.hpp"

#include <algorithm>
#include <cmath>

#include "relchirp/quadrature.hpp"

namespace relchirp {

SignalModel make_jolt_model(const JoltWorldlineParams& p, const PlaneWave& w,
                            const Window& win) {
  return SignalModel{JoltExact{p}, w, win};
}

SignalModel make_accel_model(const JoltWorldlineParams& p, const PlaneWave& w,
                             const Window& win) {
  return SignalModel{AccelExact{p}, w, win};
}

SignalModel make_fs_model(const FSParams& p, const FSFrame& frame0,
                          const PlaneWave& w, const Window& win) {
  return SignalModel{FSQuadratic{p, frame0, alpha_w(w, frame0, p)}, w, win};
}

namespace {

double phase_quadrature_tol(const JoltWorldlineParams& p, double ctau) {
  (void)p;
  return 1e-14 * std::max(1.0, std::abs(ctau));
}

}  // namespace

PhaseSample phase_wavenumber_amplitude_jolt(const JoltWorldlineParams& p,
                                            const PlaneWave& wave, double ctau) {
  const double d = doppler_factor(p.beta);
  const double k0 = wave.k0();
  const double q = integrate_adaptive(
      [&](double t) { return std::exp(-omega(p, t)); }, 0.0, ctau,
      phase_quadrature_tol(p, ctau));
  const double decay = std::exp(-omega(p, ctau));
  return PhaseSample{k0 * d * q, d * k0 * decay, d * decay * wave.e0};
}

std::pair<double, double> phase_wavenumber_accel(const JoltWorldlineParams& p,
                                                 const PlaneWave& wave,
                                                 double ctau) {
  if (!(p.a0 > 0.0)) {
    throw std::invalid_argument(
        "phase_wavenumber_accel: requires a0 > 0; for inertial motion use the "
        "jolt form with a0 = j0 = 0");
  }
  if (p.j0 != 0.0) {
    throw std::invalid_argument("phase_wavenumber_accel: requires j0 = 0");
  }
  const double d = doppler_factor(p.beta);
  const double k0 = wave.k0();
  const double decay = std::exp(-p.a0 * ctau);
  return {-k0 * d / p.a0 * decay, k0 * d * decay};
}

std::pair<double, double> phase_wavenumber_fs(const AlphaW& aw,
                                              const FSParams& params,
                                              const PlaneWave& wave,
                                              double ctau) {
  const double k0 = wave.k0();
  const double t = ctau, t2 = ctau * ctau, t3 = t2 * ctau;
  const double k1 = params.kappa1, k1p = params.kappa1_p, k2 = params.kappa2;
  const double phase =
      k0 * (aw.alpha[0] * (t + k1 * k1 * t3 / 6.0) +
            aw.alpha[1] * (k1 * t2 / 2.0 + k1p * t3 / 6.0) +
            aw.alpha[2] * k1 * k2 * t3 / 6.0);
  const double k =
      k0 * (aw.alpha_dot_w * t2 / 2.0 + aw.alpha[1] * k1 * t + aw.alpha[0]);
  return {phase, k};
}

double wavenumber_at(const SignalModel& m, double ctau) {
  return std::visit(
      [&](const auto& motion) -> double {
        using T = std::decay_t<decltype(motion)>;
        if constexpr (std::is_same_v<T, FSQuadratic>) {
          return phase_wavenumber_fs(motion.alpha, motion.params, m.wave, ctau)
              .second;
        } else {
          const JoltWorldlineParams& p = motion.params;
          return doppler_factor(p.beta) * m.wave.k0() * std::exp(-omega(p, ctau));
        }
      },
      m.motion);
}

double amplitude_at(const SignalModel& m, double ctau) {
  return std::visit(
      [&](const auto& motion) -> double {
        using T = std::decay_t<decltype(motion)>;
        if constexpr (std::is_same_v<T, FSQuadratic>) {
          // The cubic-path spectra integrate a constant-amplitude wave; the
          // amplitude structure appears through the spectral density only.
          return m.wave.e0;
        } else {
          const JoltWorldlineParams& p = motion.params;
          return doppler_factor(p.beta) * std::exp(-omega(p, ctau)) * m.wave.e0;
        }
      },
      m.motion);
}

std::vector<double> phase_profile(const SignalModel& m,
                                  std::span<const double> sorted_ctau) {
  return std::visit(
      [&](const auto& motion) -> std::vector<double> {
        using T = std::decay_t<decltype(motion)>;
        std::vector<double> out;
        if constexpr (std::is_same_v<T, FSQuadratic>) {
          out.reserve(sorted_ctau.size());
          for (double t : sorted_ctau) {
            out.push_back(
                phase_wavenumber_fs(motion.alpha, motion.params, m.wave, t).first);
          }
        } else if constexpr (std::is_same_v<T, AccelExact>) {
          out.reserve(sorted_ctau.size());
          for (double t : sorted_ctau) {
            out.push_back(phase_wavenumber_accel(motion.params, m.wave, t).first);
          }
        } else {
          const JoltWorldlineParams& p = motion.params;
          const double dk0 = doppler_factor(p.beta) * m.wave.k0();
          double span_max = 1.0;
          for (double t : sorted_ctau) span_max = std::max(span_max, std::abs(t));
          const auto q = integrate_cumulative(
              [&](double t) { return std::exp(-omega(p, t)); }, 0.0, sorted_ctau,
              phase_quadrature_tol(p, span_max));
          out.reserve(sorted_ctau.size());
          for (double v : q) out.push_back(dk0 * v);
        }
        return out;
      },
      m.motion);
}

KBand wavenumber_range(const SignalModel& m) {
  const Monotonicity mono = monotonicity(m);
  double k_i = wavenumber_at(m, m.window.ctau_i);
  double k_f = wavenumber_at(m, m.window.ctau_f);
  double lo = std::min(k_i, k_f), hi = std::max(k_i, k_f);
  if (mono.kind == MonotonicityKind::turning_point && mono.k_at_star) {
    lo = std::min(lo, *mono.k_at_star);
    hi = std::max(hi, *mono.k_at_star);
  }
  return {lo, hi};
}

namespace {

// eta^2 - 1 without cancellation for eta near 1.
double eta_sq_minus_one(double eta_minus_one) {
  return eta_minus_one * (eta_minus_one + 2.0);
}

}  // namespace

Factors factors(const SignalModel& m, double ctau_f) {
  Factors out;
  std::visit(
      [&](const auto& motion) {
        using T = std::decay_t<decltype(motion)>;
        if constexpr (std::is_same_v<T, FSQuadratic>) {
          const AlphaW& aw = motion.alpha;
          const double a1k1 = aw.alpha[1] * motion.params.kappa1;
          const double adw = aw.alpha_dot_w;
          if (a1k1 == 0.0) {
            throw std::domain_error(
                "factors: FS ratios undefined when alpha1*kappa1 = 0");
          }
          const double em1 = adw / a1k1 * ctau_f;
          const double eta = em1 + 1.0;
          out.eta = eta;
          out.A_FS = 1.0 / std::sqrt(eta);
          if (adw != 0.0) {
            out.D_FS = a1k1 * a1k1 / (2.0 * aw.alpha[0] * adw) *
                           eta_sq_minus_one(em1) +
                       1.0;
            out.k_c = m.wave.k0() * (aw.alpha[0] - a1k1 * a1k1 / (2.0 * adw));
          }
        } else {
          const JoltWorldlineParams& p = motion.params;
          out.D = doppler_factor(p.beta);
          if (p.j0 == 0.0) {
            // D_j degenerates to D_a; its absence signals "use D_a instead".
            out.D_a = std::exp(-p.a0 * ctau_f);
            out.A_a = std::exp(-0.5 * p.a0 * ctau_f);
          } else {
            if (p.a0 == 0.0) {
              throw std::domain_error(
                  "factors: eta undefined for a0 = 0 with j0 > 0");
            }
            out.D_a = std::exp(-p.a0 * ctau_f);
            out.A_a = std::exp(-0.5 * p.a0 * ctau_f);
            const double em1 = p.j0 * ctau_f / p.a0;
            const double eta = em1 + 1.0;
            out.eta = eta;
            const double exponent =
                p.a0 * p.a0 / (2.0 * p.j0) * eta_sq_minus_one(em1);
            out.D_j = std::exp(-exponent);
            out.A_j = std::sqrt(*out.D_j / eta);
          }
        }
      },
      m.motion);
  return out;
}

ReceivedSeries synthesize(const SignalModel& m, std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("synthesize: need at least 2 samples");
  }
  const double len = m.window.length();
  const double dt = len / static_cast<double>(samples - 1);
  const KBand band = wavenumber_range(m);
  const double max_abs_k = std::max(std::abs(band.k_min), std::abs(band.k_max));
  if (max_abs_k * dt > 0.8 * kPi) {
    const auto required = static_cast<std::size_t>(
                              std::ceil(max_abs_k * len / (0.8 * kPi))) +
                          1;
    throw nyquist_error(
        "synthesize: grid undersampled (max |K| * dctau > 0.8 pi); need >= " +
            std::to_string(required) + " samples",
        required);
  }

  ReceivedSeries s;
  s.ctau.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    s.ctau[i] = (i + 1 == samples)
                    ? m.window.ctau_f
                    : m.window.ctau_i + static_cast<double>(i) * dt;
  }
  s.phase = phase_profile(m, s.ctau);
  s.wavenumber.reserve(samples);
  s.amplitude.reserve(samples);
  s.signal.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    s.wavenumber.push_back(wavenumber_at(m, s.ctau[i]));
    s.amplitude.push_back(amplitude_at(m, s.ctau[i]));
    s.signal.push_back(s.amplitude[i] *
                       std::exp(std::complex<double>(0.0, s.phase[i])));
  }
  return s;
}

Monotonicity monotonicity(const SignalModel& m) {
  return std::visit(
      [&](const auto& motion) -> Monotonicity {
        using T = std::decay_t<decltype(motion)>;
        const double ti = m.window.ctau_i, tf = m.window.ctau_f;
        if constexpr (std::is_same_v<T, FSQuadratic>) {
          // dK/dctau = k0 ((alpha.w) ctau + alpha1 k1)
          const double adw = motion.alpha.alpha_dot_w;
          const double a1k1 = motion.alpha.alpha[1] * motion.params.kappa1;
          if (adw == 0.0) {
            if (a1k1 == 0.0) return {MonotonicityKind::constant, {}, {}};
            return {a1k1 > 0.0 ? MonotonicityKind::monotone_increasing
                               : MonotonicityKind::monotone_decreasing,
                    {},
                    {}};
          }
          const double star = -a1k1 / adw;
          if (star > ti && star < tf) {
            return {MonotonicityKind::turning_point, star,
                    wavenumber_at(m, star)};
          }
          const double slope_mid = adw * (0.5 * (ti + tf)) + a1k1;
          return {slope_mid >= 0.0 ? MonotonicityKind::monotone_increasing
                                   : MonotonicityKind::monotone_decreasing,
                  {},
                  {}};
        } else {
          // dK/dctau = -(a0 + j0 ctau) K, K > 0
          const JoltWorldlineParams& p = motion.params;
          if (p.a0 == 0.0 && p.j0 == 0.0) {
            return {MonotonicityKind::constant, {}, {}};
          }
          if (p.j0 == 0.0) {
            return {p.a0 > 0.0 ? MonotonicityKind::monotone_decreasing
                               : MonotonicityKind::monotone_increasing,
                    {},
                    {}};
          }
          const double star = -p.a0 / p.j0;
          if (star > ti && star < tf) {
            return {MonotonicityKind::turning_point, star,
                    wavenumber_at(m, star)};
          }
          const double wp_mid = omega_prime(p, 0.5 * (ti + tf));
          return {wp_mid > 0.0 ? MonotonicityKind::monotone_decreasing
                               : MonotonicityKind::monotone_increasing,
                  {},
                  {}};
        }
      },
      m.motion);
}

}  // namespace relchirp
