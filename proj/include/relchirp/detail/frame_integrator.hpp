#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "relchirp/kinematics.hpp"
#include "relchirp/minkowski.hpp"

namespace relchirp::detail {

using FrameState = std::array<double, 16>;

inline FrameState pack_frame(const Tetrad& t) {
  FrameState s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s[static_cast<std::size_t>(4 * i + j)] = t[i][j];
  return s;
}

inline Tetrad unpack_frame(const FrameState& s) {
  Tetrad t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = s[static_cast<std::size_t>(4 * i + j)];
  return t;
}

// Classical fixed-step 4th-order integration of a 16-component frame state.
// The final step is shortened to land exactly on ctau_end.
template <class Deriv>
TetradTrajectory integrate_frames_rk4(const Tetrad& initial, double start,
                                      double end, double step, Deriv&& deriv) {
  if (!(end > start)) {
    throw std::invalid_argument("frame transport: require ctau_end > ctau_start");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("frame transport: step must be positive");
  }
  const auto n_steps =
      static_cast<std::size_t>(std::ceil((end - start) / step - 1e-12));

  TetradTrajectory traj;
  traj.ctau.reserve(n_steps + 1);
  traj.frames.reserve(n_steps + 1);
  traj.ctau.push_back(start);
  traj.frames.push_back(initial);

  FrameState y = pack_frame(initial);
  double t = start;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double h = std::min(step, end - t);
    const FrameState k1 = deriv(t, y);
    FrameState tmp;
    for (int j = 0; j < 16; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    const FrameState k2 = deriv(t + 0.5 * h, tmp);
    for (int j = 0; j < 16; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    const FrameState k3 = deriv(t + 0.5 * h, tmp);
    for (int j = 0; j < 16; ++j) tmp[j] = y[j] + h * k3[j];
    const FrameState k4 = deriv(t + h, tmp);
    for (int j = 0; j < 16; ++j) {
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    t = (i + 1 == n_steps) ? end : start + static_cast<double>(i + 1) * step;
    traj.ctau.push_back(t);
    traj.frames.push_back(unpack_frame(y));
  }
  return traj;
}

}  // namespace relchirp::detail
