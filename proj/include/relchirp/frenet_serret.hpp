#pragma once

#include <functional>
#include <optional>

#include "relchirp/kinematics.hpp"
#include "relchirp/minkowski.hpp"

namespace relchirp {

// Curvature kappa1, torsion kappa2, hyper-torsion kappa3 of the receiver
// path, plus the derivatives entering the quartic path expansion. All values
// are taken at ctau = 0, in powers of 1/m.
struct FSParams {
  double kappa1 = 0.0;     // 1/m, >= 0 by magnitude convention
  double kappa1_p = 0.0;   // 1/m^2
  double kappa1_pp = 0.0;  // 1/m^3
  double kappa2 = 0.0;     // 1/m
  double kappa2_p = 0.0;   // 1/m^2
  double kappa3 = 0.0;     // 1/m

  FSParams() = default;
  FSParams(double k1, double k1p, double k1pp, double k2, double k2p, double k3)
      : kappa1(k1), kappa1_p(k1p), kappa1_pp(k1pp), kappa2(k2), kappa2_p(k2p),
        kappa3(k3) {
    for (double v : {kappa1, kappa1_p, kappa1_pp, kappa2, kappa2_p, kappa3}) {
      if (!std::isfinite(v)) throw std::invalid_argument("FSParams: non-finite");
    }
    if (kappa1 < 0.0) {
      throw std::invalid_argument("FSParams: kappa1 must be >= 0");
    }
  }
};

// Tangent, normal, binormal, trinormal legs at ctau = 0.
using FSFrame = Tetrad;

// Frame evolution with constant curvatures:
//   de0 =  k1 e1
//   de1 =  k1 e0 + k2 e2
//   de2 = -k2 e1 + k3 e3
//   de3 = -k3 e2
// Same integrator contract as fermi_walker_transport. The +k1 e0 term in the
// second equation is the Minkowski-signature form; Euclidean references
// carry -k1 e0 there.
TetradTrajectory fs_frame_evolve(const FSParams& params, const FSFrame& initial,
                                 double ctau_start, double ctau_end,
                                 double step = 1e-3);

// Path series in the geometric parameters, to third or fourth order:
//   z0 + (ct + k1^2 ct^3/6 [+ 3 k1 k1' ct^4/24]) e0
//      + (k1 ct^2/2 + k1' ct^3/6 [+ (k1^3 + k1'' - k1 k2^2) ct^4/24]) e1
//      + (k1 k2 ct^3/6 [+ (2 k1' k2 + k1 k2') ct^4/24]) e2
//      [+ k1 k2 k3 ct^4/24 e3]
FourVector fs_path_expansion(const FSParams& params, const FSFrame& frame0,
                             const FourVector& z0, double ctau, int order = 3);

using PathFn = std::function<FourVector(double)>;

// 3-velocity in the transmitter frame, c * (dx/dctau) / (dct/dctau), in m/s.
// Finite differences at the given step; the path must be future-directed.
std::array<double, 3> three_velocity(const PathFn& path, double ctau,
                                     double step = 1e-5);

// Wave-covector contractions with the frame legs: alpha_nu = k_mu (e_nu)^mu
// (plain component sums), and w = (k1^2, k1', k1 k2, 0).
struct AlphaW {
  std::array<double, 4> alpha{};
  std::array<double, 4> w{};
  double alpha_dot_w = 0.0;  // alpha0 k1^2 + alpha1 k1' + alpha2 k1 k2
};

AlphaW alpha_w(const PlaneWave& wave, const FSFrame& frame0,
               const FSParams& params);

// Curvature recovery from a worldline by orthonormalizing successive
// ctau-derivatives (finite differences). A cross-check utility: kappa1/kappa2
// come from z''/z''' stencils at `step`, kappa3 from a z'''' stencil at
// `step4` (the fourth derivative needs a wider stencil to stay above
// roundoff). Error estimates are Richardson differences against a doubled
// step.
struct FSCurvatureEstimate {
  double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0;
  double err1 = 0.0, err2 = 0.0, err3 = 0.0;
  // false when the path is straight (kappa1 ~ 0) or planar (kappa2 ~ 0);
  // the dependent curvatures are then reported as zero.
  bool torsion_defined = false;
  bool hyper_torsion_defined = false;
};

FSCurvatureEstimate fs_curvatures_from_worldline(const PathFn& path, double ctau,
                                                 double step = 2e-3,
                                                 double step4 = 5e-2);

}  // namespace relchirp
