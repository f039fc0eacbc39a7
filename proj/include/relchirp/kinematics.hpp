#pragma once

#include <span>
#include <vector>

#include "relchirp/minkowski.hpp"

namespace relchirp {

// Worldline with constant proper jolt j0 and initial proper acceleration a0,
// moving along the x^1 axis with initial speed beta*c. All parameters are in
// geometric units: a0 in 1/m, j0 in 1/m^2, proper time as ctau in meters.
// SI conversion (accel = c^2 a0, jolt rate = c^3 j0) happens at the CLI
// boundary only. a0 and j0 are magnitudes by convention and normally
// non-negative; only finiteness and |beta| < 1 are enforced here.
struct JoltWorldlineParams {
  double beta = 0.0;
  double a0 = 0.0;    // 1/m
  double j0 = 0.0;    // 1/m^2
  double x1_0 = 0.0;  // m, initial spatial offset z^1(0)

  JoltWorldlineParams() = default;
  JoltWorldlineParams(double beta_, double a0_, double j0_, double x1_0_ = 0.0)
      : beta(beta_), a0(a0_), j0(j0_), x1_0(x1_0_) {
    if (!(std::abs(beta) < 1.0)) {
      throw std::invalid_argument("JoltWorldlineParams: |beta| must be < 1");
    }
    if (!std::isfinite(a0) || !std::isfinite(j0) || !std::isfinite(x1_0)) {
      throw std::invalid_argument("JoltWorldlineParams: non-finite parameter");
    }
  }

  double gamma() const { return 1.0 / std::sqrt(1.0 - beta * beta); }
};

// omega(ctau) = a0 ctau + j0 ctau^2 / 2, the accumulated rapidity change.
inline double omega(const JoltWorldlineParams& p, double ctau) {
  return p.a0 * ctau + 0.5 * p.j0 * ctau * ctau;
}

inline double omega_prime(const JoltWorldlineParams& p, double ctau) {
  return p.a0 + p.j0 * ctau;
}

// Position z(ctau). Closed form for j0 = 0; adaptive quadrature otherwise
// (no elementary antiderivative exists for the j0 > 0 integrands).
FourVector worldline_position(const JoltWorldlineParams& p, double ctau);

// Positions on a sorted ctau grid; the quadrature is evaluated cumulatively
// so n points cost O(n) rather than O(n^2) panels.
std::vector<FourVector> worldline_positions(const JoltWorldlineParams& p,
                                            std::span<const double> sorted_ctau);

// Velocity, acceleration, jolt and frame-orthogonal jolt along the worldline.
// Invariants (all in closed form): u.u = -1, u.a = 0, |a| = a0 + j0 ctau,
// sigma = jolt - (a.a) u with |sigma| = j0 and sigma.u = 0.
struct KinematicState {
  double ctau;
  FourVector z, u, a, jolt, sigma;
};

KinematicState kinematic_state(const JoltWorldlineParams& p, double ctau);

// Frame samples produced by the transport integrators.
struct TetradTrajectory {
  std::vector<double> ctau;
  std::vector<Tetrad> frames;

  std::size_t size() const { return ctau.size(); }
};

// Fermi-Walker transport of an orthonormal tetrad along the jolt worldline:
//   d(e)/dctau = u (a.e) - a (u.e).
// Classical fixed-step 4th-order integration; the initial tetrad must be
// orthonormal with e0 = u(ctau_start).
TetradTrajectory fermi_walker_transport(const JoltWorldlineParams& p,
                                        const Tetrad& initial,
                                        double ctau_start, double ctau_end,
                                        double step = 1e-3);

// Columns are the tetrad legs expressed in transmitter coordinates. For an
// orthonormal tetrad the result satisfies L^T eta L = eta.
Mat4 frame_to_lorentz_matrix(const Tetrad& frame);

}  // namespace relchirp
