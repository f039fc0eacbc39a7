#include "relchirp/kinematics.hpp"

#include <cmath>

#include "relchirp/detail/frame_integrator.hpp"
#include "relchirp/quadrature.hpp"

namespace relchirp {

namespace {

double position_tolerance(double ctau) {
  return 1e-13 * std::max(1.0, std::abs(ctau));
}

FourVector position_closed_form_j0_zero(const JoltWorldlineParams& p,
                                        double ctau) {
  const double g = p.gamma();
  if (p.a0 == 0.0) {
    return FourVector(g * ctau, p.x1_0 + g * p.beta * ctau, 0.0, 0.0);
  }
  const double s = std::sinh(p.a0 * ctau);
  const double c = std::cosh(p.a0 * ctau) - 1.0;
  return FourVector(g * (s + p.beta * c) / p.a0,
                    p.x1_0 + g * (c + p.beta * s) / p.a0, 0.0, 0.0);
}

}  // namespace

FourVector worldline_position(const JoltWorldlineParams& p, double ctau) {
  if (!std::isfinite(ctau)) {
    throw std::invalid_argument("worldline_position: ctau must be finite");
  }
  if (p.j0 == 0.0) return position_closed_form_j0_zero(p, ctau);
  const double g = p.gamma();
  const double tol = position_tolerance(ctau);
  const double i_cosh =
      integrate_adaptive([&](double t) { return std::cosh(omega(p, t)); }, 0.0,
                         ctau, tol);
  const double i_sinh =
      integrate_adaptive([&](double t) { return std::sinh(omega(p, t)); }, 0.0,
                         ctau, tol);
  return FourVector(g * (i_cosh + p.beta * i_sinh),
                    p.x1_0 + g * (i_sinh + p.beta * i_cosh), 0.0, 0.0);
}

std::vector<FourVector> worldline_positions(const JoltWorldlineParams& p,
                                            std::span<const double> sorted_ctau) {
  std::vector<FourVector> out;
  out.reserve(sorted_ctau.size());
  if (p.j0 == 0.0) {
    for (double t : sorted_ctau) out.push_back(position_closed_form_j0_zero(p, t));
    return out;
  }
  double span_max = 1.0;
  for (double t : sorted_ctau) span_max = std::max(span_max, std::abs(t));
  const double tol = position_tolerance(span_max);
  const auto i_cosh = integrate_cumulative(
      [&](double t) { return std::cosh(omega(p, t)); }, 0.0, sorted_ctau, tol);
  const auto i_sinh = integrate_cumulative(
      [&](double t) { return std::sinh(omega(p, t)); }, 0.0, sorted_ctau, tol);
  const double g = p.gamma();
  for (std::size_t i = 0; i < sorted_ctau.size(); ++i) {
    out.emplace_back(g * (i_cosh[i] + p.beta * i_sinh[i]),
                     p.x1_0 + g * (i_sinh[i] + p.beta * i_cosh[i]), 0.0, 0.0);
  }
  return out;
}

KinematicState kinematic_state(const JoltWorldlineParams& p, double ctau) {
  if (!std::isfinite(ctau)) {
    throw std::invalid_argument("kinematic_state: ctau must be finite");
  }
  const double g = p.gamma();
  const double w = omega(p, ctau);
  const double wp = omega_prime(p, ctau);
  const double wpp = p.j0;
  const double ch = std::cosh(w);
  const double sh = std::sinh(w);
  const double tl = g * (ch + p.beta * sh);
  const double sl = g * (sh + p.beta * ch);

  KinematicState st;
  st.ctau = ctau;
  st.z = worldline_position(p, ctau);
  st.u = FourVector(tl, sl, 0.0, 0.0);
  st.a = FourVector(wp * sl, wp * tl, 0.0, 0.0);
  st.jolt = FourVector(wpp * sl + wp * wp * tl, wpp * tl + wp * wp * sl, 0.0, 0.0);
  st.sigma = FourVector(wpp * sl, wpp * tl, 0.0, 0.0);
  return st;
}

TetradTrajectory fermi_walker_transport(const JoltWorldlineParams& p,
                                        const Tetrad& initial,
                                        double ctau_start, double ctau_end,
                                        double step) {
  if (!initial.is_orthonormal(1e-9)) {
    throw std::invalid_argument(
        "fermi_walker_transport: initial tetrad is not orthonormal");
  }
  const KinematicState k0 = kinematic_state(p, ctau_start);
  for (int j = 0; j < 4; ++j) {
    if (std::abs(initial[0][j] - k0.u[j]) > 1e-9) {
      throw std::invalid_argument(
          "fermi_walker_transport: initial e0 must equal u(ctau_start)");
    }
  }
  // de = u (a.e) - a (u.e); the index lowering is folded into minkowski_dot.
  // u and a are evaluated in closed form (the position is not needed here).
  auto deriv = [&](double t, const detail::FrameState& s) {
    const double g = p.gamma();
    const double w = omega(p, t);
    const double wp = omega_prime(p, t);
    const double tl = g * (std::cosh(w) + p.beta * std::sinh(w));
    const double sl = g * (std::sinh(w) + p.beta * std::cosh(w));
    const FourVector u(tl, sl, 0.0, 0.0);
    const FourVector a(wp * sl, wp * tl, 0.0, 0.0);
    detail::FrameState d;
    for (int leg = 0; leg < 4; ++leg) {
      const FourVector e(s[4 * leg], s[4 * leg + 1], s[4 * leg + 2],
                         s[4 * leg + 3]);
      const double ae = minkowski_dot(a, e);
      const double ue = minkowski_dot(u, e);
      for (int j = 0; j < 4; ++j) d[4 * leg + j] = u[j] * ae - a[j] * ue;
    }
    return d;
  };
  return detail::integrate_frames_rk4(initial, ctau_start, ctau_end, step, deriv);
}

Mat4 frame_to_lorentz_matrix(const Tetrad& frame) {
  Mat4 m{};
  for (int col = 0; col < 4; ++col)
    for (int row = 0; row < 4; ++row) m[row][col] = frame[col][row];
  return m;
}

}  // namespace relchirp
