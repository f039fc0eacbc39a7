#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace relchirp {

class quadrature_error : public std::runtime_error {
 public:
  explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kKronrodX[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kKronrodW[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double kGaussW[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

template <class F>
inline void gauss_kronrod_15(F&& f, double a, double b, double& kronrod,
                             double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double k15 = kKronrodW[7] * fc;
  double g7 = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodX[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    k15 += kKronrodW[i] * fsum;
    if (i % 2 == 1) g7 += kGaussW[i / 2] * fsum;
  }
  kronrod = k15 * half;
  err = std::abs((k15 - g7) * half);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of a smooth real integrand to absolute
// tolerance abs_tol. Deterministic: splits the worst segment until the summed
// error estimate drops below tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          int max_panels = 4000) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  struct Segment {
    double a, b, value, err;
  };
  std::vector<Segment> segs;
  Segment s0{a, b, 0.0, 0.0};
  detail::gauss_kronrod_15(f, a, b, s0.value, s0.err);
  segs.push_back(s0);

  while (static_cast<int>(segs.size()) < max_panels) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    if (total_err <= abs_tol) break;
    Segment seg = segs[worst];
    const double mid = 0.5 * (seg.a + seg.b);
    if (mid <= seg.a || mid >= seg.b) break;  // interval exhausted in doubles
    Segment left{seg.a, mid, 0.0, 0.0}, right{mid, seg.b, 0.0, 0.0};
    detail::gauss_kronrod_15(f, left.a, left.b, left.value, left.err);
    detail::gauss_kronrod_15(f, right.a, right.b, right.value, right.err);
    segs[worst] = left;
    segs.push_back(right);
  }

  double total_err = 0.0, value = 0.0;
  for (const Segment& s : segs) {
    total_err += s.err;
    value += s.value;
  }
  if (total_err > abs_tol * 100.0 + 1e-300) {
    throw quadrature_error(
        "integrate_adaptive: failed to reach tolerance " + std::to_string(abs_tol) +
        " on [" + std::to_string(a) + ", " + std::to_string(b) + "]; panels=" +
        std::to_string(segs.size()) + " error=" + std::to_string(total_err));
  }
  return sign * value;
}

// Cumulative integral I(x_i) = int_{x0}^{x_i} f for a sorted grid. Each gap
// is integrated once and prefix-summed, so evaluating n points costs O(n)
// panel evaluations instead of O(n^2).
template <class F>
std::vector<double> integrate_cumulative(F&& f, double x0,
                                         std::span<const double> sorted_x,
                                         double abs_tol) {
  std::vector<double> out(sorted_x.size());
  if (sorted_x.empty()) return out;
  double acc = integrate_adaptive(f, x0, sorted_x[0], abs_tol);
  out[0] = acc;
  for (std::size_t i = 1; i < sorted_x.size(); ++i) {
    if (sorted_x[i] < sorted_x[i - 1]) {
      throw std::invalid_argument("integrate_cumulative: grid not sorted");
    }
    acc += integrate_adaptive(f, sorted_x[i - 1], sorted_x[i], abs_tol);
    out[i] = acc;
  }
  return out;
}

}  // namespace relchirp
