#include "relchirp/frenet_serret.hpp"

#include <cmath>

#include "relchirp/detail/frame_integrator.hpp"

namespace relchirp {

TetradTrajectory fs_frame_evolve(const FSParams& params, const FSFrame& initial,
                                 double ctau_start, double ctau_end,
                                 double step) {
  if (!initial.is_orthonormal(1e-9)) {
    throw std::invalid_argument("fs_frame_evolve: initial frame not orthonormal");
  }
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const double k3 = params.kappa3;
  auto deriv = [k1, k2, k3](double, const detail::FrameState& s) {
    detail::FrameState d;
    for (int j = 0; j < 4; ++j) {
      const double e0 = s[0 + j], e1 = s[4 + j], e2 = s[8 + j], e3 = s[12 + j];
      d[0 + j] = k1 * e1;
      d[4 + j] = k1 * e0 + k2 * e2;
      d[8 + j] = -k2 * e1 + k3 * e3;
      d[12 + j] = -k3 * e2;
    }
    return d;
  };
  return detail::integrate_frames_rk4(initial, ctau_start, ctau_end, step, deriv);
}

FourVector fs_path_expansion(const FSParams& params, const FSFrame& frame0,
                             const FourVector& z0, double ctau, int order) {
  if (order != 3 && order != 4) {
    throw std::invalid_argument("fs_path_expansion: order must be 3 or 4");
  }
  const double t = ctau;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double k1 = params.kappa1, k1p = params.kappa1_p, k1pp = params.kappa1_pp;
  const double k2 = params.kappa2, k2p = params.kappa2_p, k3 = params.kappa3;

  double c0 = t + k1 * k1 * t3 / 6.0;
  double c1 = k1 * t2 / 2.0 + k1p * t3 / 6.0;
  double c2 = k1 * k2 * t3 / 6.0;
  double c3 = 0.0;
  if (order == 4) {
    const double t4 = t3 * t;
    c0 += 3.0 * k1 * k1p * t4 / 24.0;
    c1 += (k1 * k1 * k1 + k1pp - k1 * k2 * k2) * t4 / 24.0;
    c2 += (2.0 * k1p * k2 + k1 * k2p) * t4 / 24.0;
    c3 += k1 * k2 * k3 * t4 / 24.0;
  }
  FourVector z = z0;
  z += c0 * frame0[0];
  z += c1 * frame0[1];
  z += c2 * frame0[2];
  z += c3 * frame0[3];
  return z;
}

namespace {

// 5-point central first derivative, exact through quartics.
FourVector path_derivative(const PathFn& path, double x, double h) {
  FourVector d;
  const FourVector m2 = path(x - 2.0 * h), m1 = path(x - h);
  const FourVector p1 = path(x + h), p2 = path(x + 2.0 * h);
  for (int j = 0; j < 4; ++j) {
    d[j] = (m2[j] - 8.0 * m1[j] + 8.0 * p1[j] - p2[j]) / (12.0 * h);
  }
  return d;
}

}  // namespace

std::array<double, 3> three_velocity(const PathFn& path, double ctau,
                                     double step) {
  const FourVector d = path_derivative(path, ctau, step);
  if (!(d[0] > 0.0)) {
    throw std::domain_error("three_velocity: path is not future-directed");
  }
  return {kSpeedOfLight * d[1] / d[0], kSpeedOfLight * d[2] / d[0],
          kSpeedOfLight * d[3] / d[0]};
}

AlphaW alpha_w(const PlaneWave& wave, const FSFrame& frame0,
               const FSParams& params) {
  if (!frame0.is_orthonormal(1e-9)) {
    throw std::invalid_argument("alpha_w: frame not orthonormal");
  }
  const FourVector kcov = wave_covector(wave);
  AlphaW out;
  for (int nu = 0; nu < 4; ++nu) out.alpha[nu] = contract(kcov, frame0[nu]);
  out.w = {params.kappa1 * params.kappa1, params.kappa1_p,
           params.kappa1 * params.kappa2, 0.0};
  out.alpha_dot_w = out.alpha[0] * out.w[0] + out.alpha[1] * out.w[1] +
                    out.alpha[2] * out.w[2];
  return out;
}

namespace {

struct Derivatives {
  FourVector d1, d2, d3, d4;
};

// z', z'', z''' from one 5-point stencil at `h`; z'''' from a stencil at
// `h4`. The stencils are exact on quartic paths.
Derivatives path_derivatives(const PathFn& path, double x, double h, double h4) {
  const FourVector m2 = path(x - 2.0 * h), m1 = path(x - h), c = path(x);
  const FourVector p1 = path(x + h), p2 = path(x + 2.0 * h);
  Derivatives d;
  for (int j = 0; j < 4; ++j) {
    d.d1[j] = (m2[j] - 8.0 * m1[j] + 8.0 * p1[j] - p2[j]) / (12.0 * h);
    d.d2[j] = (-m2[j] + 16.0 * m1[j] - 30.0 * c[j] + 16.0 * p1[j] - p2[j]) /
              (12.0 * h * h);
    d.d3[j] = (-m2[j] + 2.0 * m1[j] - 2.0 * p1[j] + p2[j]) / (2.0 * h * h * h);
  }
  const FourVector n2 = path(x - 2.0 * h4), n1 = path(x - h4);
  const FourVector q1 = path(x + h4), q2 = path(x + 2.0 * h4);
  const FourVector c4 = path(x);
  for (int j = 0; j < 4; ++j) {
    d.d4[j] = (n2[j] - 4.0 * n1[j] + 6.0 * c4[j] - 4.0 * q1[j] + q2[j]) /
              (h4 * h4 * h4 * h4);
  }
  return d;
}

// Component of v orthogonal to the given orthonormal legs (Minkowski
// projection: subtract eps_j (v.e_j) e_j with eps = -1 for the timelike leg).
FourVector reject(const FourVector& v, const FourVector& e, double metric_sign) {
  FourVector out = v;
  const double c = minkowski_dot(v, e) * metric_sign;
  out -= c * e;
  return out;
}

// Levi-Civita dual of three legs; orthogonal to all of them by construction.
FourVector epsilon_dual(const FourVector& a, const FourVector& b,
                        const FourVector& c) {
  auto det3 = [](double a0, double a1, double a2, double b0, double b1,
                 double b2, double c0, double c1, double c2) {
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
           a2 * (b0 * c1 - b1 * c0);
  };
  // d_mu = eps_{mu nu rho sigma} a^nu b^rho c^sigma, then raise the index.
  double d_cov[4];
  double sign = 1.0;
  for (int mu = 0; mu < 4; ++mu) {
    int idx[3], n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != mu) idx[n++] = j;
    d_cov[mu] = sign * det3(a[idx[0]], a[idx[1]], a[idx[2]], b[idx[0]],
                            b[idx[1]], b[idx[2]], c[idx[0]], c[idx[1]],
                            c[idx[2]]);
    sign = -sign;
  }
  // Raise the index and orient so dual(e0,e1,e2) = +e3 for the rest frame.
  return FourVector(d_cov[0], -d_cov[1], -d_cov[2], -d_cov[3]);
}

struct CurvatureSample {
  double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0;
  bool torsion_defined = false;
  bool hyper_torsion_defined = false;
};

CurvatureSample curvatures_at_step(const PathFn& path, double ctau, double h,
                                   double h4) {
  // Floor below which a curvature is treated as degenerate: it must sit
  // above the finite-difference roundoff of the third-derivative stencil
  // (~1e-6 at the default step), else noise leaks into kappa3.
  constexpr double kDegenerate = 1e-5;

  const Derivatives d = path_derivatives(path, ctau, h, h4);
  CurvatureSample out;

  const double u_norm2 = -minkowski_dot(d.d1, d.d1);
  if (!(u_norm2 > 0.0)) {
    throw std::domain_error("fs_curvatures_from_worldline: tangent not timelike");
  }
  const FourVector e0 = (1.0 / std::sqrt(u_norm2)) * d.d1;

  FourVector v1 = reject(d.d2, e0, -1.0);
  out.kappa1 = std::sqrt(std::max(0.0, minkowski_dot(v1, v1)));
  if (out.kappa1 <= kDegenerate) {
    return out;  // straight worldline: kappa2/kappa3 undefined
  }
  out.torsion_defined = true;
  const FourVector e1 = (1.0 / out.kappa1) * v1;

  FourVector v2 = reject(reject(d.d3, e0, -1.0), e1, 1.0);
  const double k1k2 = std::sqrt(std::max(0.0, minkowski_dot(v2, v2)));
  out.kappa2 = k1k2 / out.kappa1;
  if (out.kappa2 <= kDegenerate) {
    return out;  // planar worldline: kappa3 reported as zero
  }
  out.hyper_torsion_defined = true;
  const FourVector e2 = (1.0 / k1k2) * v2;

  FourVector e3 = epsilon_dual(e0, e1, e2);
  const double e3_norm = std::sqrt(std::max(0.0, minkowski_dot(e3, e3)));
  e3 = (1.0 / e3_norm) * e3;
  const FourVector v3 = reject(reject(reject(d.d4, e0, -1.0), e1, 1.0), e2, 1.0);
  out.kappa3 = minkowski_dot(v3, e3) / k1k2;
  return out;
}

}  // namespace

FSCurvatureEstimate fs_curvatures_from_worldline(const PathFn& path, double ctau,
                                                 double step, double step4) {
  const CurvatureSample fine = curvatures_at_step(path, ctau, step, step4);
  const CurvatureSample coarse =
      curvatures_at_step(path, ctau, 2.0 * step, 2.0 * step4);

  FSCurvatureEstimate est;
  est.kappa1 = fine.kappa1;
  est.kappa2 = fine.kappa2;
  est.kappa3 = fine.kappa3;
  est.torsion_defined = fine.torsion_defined;
  est.hyper_torsion_defined = fine.hyper_torsion_defined;
  est.err1 = std::abs(fine.kappa1 - coarse.kappa1) / 15.0;
  est.err2 = std::abs(fine.kappa2 - coarse.kappa2) / 15.0;
  est.err3 = std::abs(fine.kappa3 - coarse.kappa3) / 15.0;
  return est;
}

}  // namespace relchirp
