#include "uniformize/lobachevsky.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "uniformize/error.hpp"

namespace uniformize {

namespace {

using std::numbers::pi;

constexpr int kMaxTerms = 60;

// c_n = ζ(2n) / (n (2n+1)) for the small-argument expansion
//   Cl₂(t) = t - t log t + t Σ c_n (t/2π)^{2n},   0 ≤ t < 2π.
const std::array<double, kMaxTerms + 1>& clausen_coefficients() {
  static const std::array<double, kMaxTerms + 1> table = [] {
    std::array<double, kMaxTerms + 1> c{};
    for (int n = 1; n <= kMaxTerms; ++n) {
      const double zeta = std::riemann_zeta(2.0 * n);
      c[n] = zeta / (n * (2.0 * n + 1.0));
    }
    return c;
  }();
  return table;
}

// Cl₂(t) for t ∈ [0, π].
double clausen_reduced(double t, const SpecialFnConfig& config) {
  if (t == 0.0) return 0.0;
  const auto& c = clausen_coefficients();
  const double ratio = (t / (2.0 * pi)) * (t / (2.0 * pi));
  const int terms = config.series_terms < kMaxTerms ? config.series_terms : kMaxTerms;
  double power = 1.0;
  double sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    power *= ratio;
    const double term = c[n] * power;
    sum += term;
    if (term < config.tol) break;
  }
  return t - t * std::log(t) + t * sum;
}

void check_phi(double phi) {
  if (!(phi > 0.0 && phi < pi)) throw Error(ErrorCode::PhiOutOfRange, "phi must lie in (0,pi)");
}

}  // namespace

double lob(double x, const SpecialFnConfig& config) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  // reduce to r ∈ [-π/2, π/2]
  const double r = x - pi * std::nearbyint(x / pi);
  const double a = std::fabs(r);
  // Л(a) = ½ Cl₂(2a), 2a ∈ [0, π]
  const double value = 0.5 * clausen_reduced(2.0 * a, config);
  return r < 0.0 ? -value : value;
}

double lob_derivative(double x) { return -std::log(std::fabs(2.0 * std::sin(x))); }

double lob_second_derivative(double x) { return -std::cos(x) / std::sin(x); }

double i_plus(double phi, double x) {
  check_phi(phi);
  return lob(x) + lob(phi - x) - 2.0 * lob(0.5 * phi);
}

double i_minus(double phi, double x) {
  check_phi(phi);
  return lob(x) - lob(phi + x) + 2.0 * lob(0.5 * pi + 0.5 * phi);
}

double omega(double gamma, double x, double y) {
  const double num = std::cos(x) * std::sin(gamma);
  const double den = std::cos(y) + std::cos(x) * std::cos(gamma);
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    return num > 0.0 ? 0.5 * pi : -0.5 * pi;
  }
  return std::atan(num / den);
}

double ortho_v(double x, double y) {
  return 0.25 * lob(x + 0.5 * pi - y) + 0.25 * lob(-x + 0.5 * pi - y) + 0.5 * lob(y);
}

}  // namespace uniformize
