#pragma once

namespace uniformize {

/// Accuracy controls for the Lobachevsky function.
struct SpecialFnConfig {
  int series_terms = 60;  // hard cap on correction-series terms
  double tol = 1e-17;     // stop once a term drops below tol
};

/// Global maximum of |Л|, attained at ±π/6.
inline constexpr double kLobMax = 0.50747080320482681;

/// Lobachevsky function Л(x) = -∫₀ˣ log|2 sin t| dt. Odd and π-periodic.
double lob(double x, const SpecialFnConfig& config = {});

/// Л'(x) = -log|2 sin x|; infinite at multiples of π.
double lob_derivative(double x);

/// Л''(x) = -cot x.
double lob_second_derivative(double x);

/// I⁺_φ(x) = Л(x) + Л(φ-x) - 2Л(φ/2). Concave on [0,φ], zero at φ/2.
/// Throws Error{PhiOutOfRange} unless φ ∈ (0,π).
double i_plus(double phi, double x);

/// I⁻_φ(x) = Л(x) - Л(φ+x) + 2Л(π/2+φ/2).
/// Throws Error{PhiOutOfRange} unless φ ∈ (0,π).
double i_minus(double phi, double x);

/// ω_γ(x,y) = arctan(cos x sin γ / (cos y + cos x cos γ)) with arctan(±∞) = ±π/2.
/// A vanishing denominator with vanishing numerator gives 0.
double omega(double gamma, double x, double y);

/// Orthoscheme volume kernel V(x,y) = ¼Л(x+π/2-y) + ¼Л(-x+π/2-y) + ½Л(y).
double ortho_v(double x, double y);

}  // namespace uniformize
