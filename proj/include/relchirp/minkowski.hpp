#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace relchirp {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Metric signature is (-,+,+,+) throughout. With this choice u.u = -1 for
// four-velocities and the frame-orthogonal jolt satisfies sigma.u = 0.
inline constexpr std::array<double, 4> kMetricDiag = {-1.0, 1.0, 1.0, 1.0};

// Spacetime vector in transmitter coordinates. Component 0 is temporal (ct),
// 1..3 spatial; positions are in meters, derived vectors in 1/m^n.
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  FourVector() = default;
  FourVector(double c0, double c1, double c2, double c3) : c{c0, c1, c2, c3} {
    for (double v : c) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("FourVector: non-finite component");
      }
    }
  }

  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  FourVector& operator+=(const FourVector& o) {
    for (int i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  FourVector& operator-=(const FourVector& o) {
    for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  FourVector& operator*=(double s) {
    for (double& v : c) v *= s;
    return *this;
  }

  friend FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
  friend FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
  friend FourVector operator*(FourVector a, double s) { return a *= s; }
  friend FourVector operator*(double s, FourVector a) { return a *= s; }
  friend FourVector operator-(FourVector a) { return a *= -1.0; }
};

// Minkowski inner product, -a0 b0 + a1 b1 + a2 b2 + a3 b3.
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
  return -a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

// Plain component contraction (no metric). Used with covectors whose index
// was already lowered, e.g. the wave covector.
inline double contract(const FourVector& cov, const FourVector& v) {
  return cov.c[0] * v.c[0] + cov.c[1] * v.c[1] + cov.c[2] * v.c[2] + cov.c[3] * v.c[3];
}

inline FourVector lower_index(const FourVector& v) {
  return FourVector(-v.c[0], v.c[1], v.c[2], v.c[3]);
}

using Mat4 = std::array<std::array<double, 4>, 4>;

// Orthonormal frame carried by an observer; e0 is the timelike leg.
struct Tetrad {
  std::array<FourVector, 4> e;

  Tetrad() {
    for (int i = 0; i < 4; ++i) e[i][i] = 1.0;
  }
  Tetrad(const FourVector& e0, const FourVector& e1, const FourVector& e2,
         const FourVector& e3)
      : e{e0, e1, e2, e3} {}

  const FourVector& operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  FourVector& operator[](int i) { return e[static_cast<std::size_t>(i)]; }

  Mat4 gram() const {
    Mat4 g{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = minkowski_dot(e[i], e[j]);
    return g;
  }

  // max |gram - diag(-1,1,1,1)| over all entries
  double gram_deviation() const {
    Mat4 g = gram();
    double dev = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double target = (i == j) ? kMetricDiag[i] : 0.0;
        dev = std::max(dev, std::abs(g[i][j] - target));
      }
    return dev;
  }

  bool is_orthonormal(double tol = 1e-9) const { return gram_deviation() <= tol; }
};

// Transmitted continuous plane wave: E0 exp(i k0 (ct - khat . x)).
struct PlaneWave {
  double f0;                    // Hz
  std::array<double, 3> khat;   // unit propagation direction
  double e0;                    // field amplitude, arbitrary scale

  PlaneWave(double f0_hz, const std::array<double, 3>& dir, double amplitude)
      : f0(f0_hz), khat(dir), e0(amplitude) {
    if (!(f0 > 0.0) || !std::isfinite(f0)) {
      throw std::invalid_argument("PlaneWave: f0 must be positive and finite");
    }
    if (!(e0 > 0.0) || !std::isfinite(e0)) {
      throw std::invalid_argument("PlaneWave: amplitude must be positive and finite");
    }
    double n = std::sqrt(khat[0] * khat[0] + khat[1] * khat[1] + khat[2] * khat[2]);
    if (std::abs(n - 1.0) > 1e-12) {
      throw std::invalid_argument("PlaneWave: khat must be a unit vector");
    }
  }

  double k0() const { return 2.0 * kPi * f0 / kSpeedOfLight; }  // rad/m
};

// sqrt((1-beta)/(1+beta)): frequency and amplitude ratio for inertial
// recession at speed beta*c.
inline double doppler_factor(double beta) {
  if (!(std::abs(beta) < 1.0)) {
    throw std::domain_error("doppler_factor: |beta| must be < 1");
  }
  return std::sqrt((1.0 - beta) / (1.0 + beta));
}

// Covector (1, -khat) of the transmitted wave. The phase along a worldline z
// is k0 * contract(wave_covector(w), z); the signs are folded into the
// components, so the contraction is a plain component sum.
inline FourVector wave_covector(const PlaneWave& w) {
  return FourVector(1.0, -w.khat[0], -w.khat[1], -w.khat[2]);
}

}  // namespace relchirp
