#include <cmath>

#include "relchirp/oscillatory.hpp"

namespace relchirp {

namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3), -Ai'(0) = 3^(-1/3)/Gamma(1/3)
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = 0.25881940379280679840;
constexpr double kSqrtPi = 1.7724538509055160273;

// Maclaurin series: Ai(x) = Ai(0) f(x) + Ai'(0) g(x), where f and g solve
// y'' = x y with (f, f') = (1, 0) and (g, g') = (0, 1) at the origin.
double airy_series(double x) {
  const double x3 = x * x * x;
  double f_term = 1.0, g_term = x;
  double f = f_term, g = g_term;
  for (int k = 0; k < 200; ++k) {
    const double dk = static_cast<double>(k);
    f_term *= x3 / ((3.0 * dk + 2.0) * (3.0 * dk + 3.0));
    g_term *= x3 / ((3.0 * dk + 3.0) * (3.0 * dk + 4.0));
    f += f_term;
    g += g_term;
    if (std::abs(f_term) < 1e-18 * std::abs(f) &&
        std::abs(g_term) < 1e-18 * std::max(std::abs(g), 1e-300)) {
      break;
    }
  }
  return kAi0 * f - kAip0 * g;
}

// u_k coefficients of the asymptotic expansions, u_0 = 1,
// u_k = u_{k-1} (6k-5)(6k-1) / (72 k).
double u_coeff(int k, double prev) {
  const double dk = static_cast<double>(k);
  return prev * (6.0 * dk - 5.0) * (6.0 * dk - 1.0) / (72.0 * dk);
}

// x > 0 branch: Ai(x) = exp(-zeta) / (2 sqrt(pi) x^(1/4)) * sum (-1)^k u_k zeta^-k
double airy_asymptotic_pos(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double u = 1.0, term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    u = u_coeff(k, u);
    const double next = (k % 2 ? -1.0 : 1.0) * u / std::pow(zeta, k);
    if (std::abs(next) > std::abs(term)) break;  // divergent tail reached
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(-zeta) / (2.0 * kSqrtPi * std::pow(x, 0.25)) * sum;
}

// x < 0 branch: Ai(-z) = (cos(zeta - pi/4) P + sin(zeta - pi/4) Q)
//                        / (sqrt(pi) z^(1/4)),
// P = sum (-1)^k u_{2k} zeta^-2k, Q = sum (-1)^k u_{2k+1} zeta^-(2k+1).
double airy_asymptotic_neg(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double p = 1.0, q = 0.0;
  double u = 1.0;
  double last_even = 1.0, last_odd = 0.0;
  for (int k = 1; k < 40; ++k) {
    u = u_coeff(k, u);
    const double term = u / std::pow(zeta, k);
    if (k % 2 == 1) {
      const double signed_term = ((k / 2) % 2 ? -1.0 : 1.0) * term;
      if (last_odd != 0.0 && std::abs(signed_term) > std::abs(last_odd)) break;
      q += signed_term;
      last_odd = signed_term;
    } else {
      const double signed_term = ((k / 2) % 2 ? -1.0 : 1.0) * term;
      if (std::abs(signed_term) > std::abs(last_even)) break;
      p += signed_term;
      last_even = signed_term;
    }
    if (std::abs(term) < 1e-18) break;
  }
  const double phase = zeta - 0.25 * kPi;
  return (std::cos(phase) * p + std::sin(phase) * q) /
         (kSqrtPi * std::pow(z, 0.25));
}

}  // namespace

// Switchover: series on [-7, 5], asymptotic expansions outside. At x = 5 the
// exponential branch is already below 1e-10 absolute error; the oscillatory
// branch only reaches that accuracy (smallest term ~ exp(-4/3 |x|^(3/2)))
// near x = -7, while series cancellation there still leaves ~1e-12.
double airy_ai(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("airy_ai: non-finite argument");
  }
  if (x > 5.0) return airy_asymptotic_pos(x);
  if (x < -7.0) return airy_asymptotic_neg(x);
  return airy_series(x);
}

}  // namespace relchirp
