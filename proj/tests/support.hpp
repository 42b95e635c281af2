#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "uniformize/angles.hpp"
#include "uniformize/map.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

// Independent reference for Л: the Fourier series ½Σ sin(2nx)/n², summed in
// long double. The tail after N terms is below 1/(2N² |sin x|).
inline double lob_series(double x, long terms = 2'000'000) {
  long double s = 0.0L;
  for (long n = terms; n >= 1; --n) {
    const long double nn = static_cast<long double>(n);
    s += std::sin(2.0L * nn * x) / (nn * nn);
  }
  return static_cast<double>(0.5L * s);
}

// Catalan's constant from the alternating series, pairing terms.
inline double catalan() {
  long double s = 0.0L;
  for (long k = 4'000'000; k >= 0; --k) {
    const long double d = 2.0L * k + 1.0L;
    s += (k % 2 ? -1.0L : 1.0L) / (d * d);
  }
  return static_cast<double>(s);
}

// Orbit count of a permutation given as an index array.
inline int orbit_count(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = static_cast<int>(i); !seen[j]; j = perm[j]) seen[j] = 1;
  }
  return count;
}

// χ straight from the two permutations: orbits of σ, of opp, and of σ∘opp.
inline int chi_from_permutations(const uniformize::SurfaceMap& m) {
  const auto& opp = m.opposite_permutation();
  const auto& sigma = m.rotation_permutation();
  std::vector<int> face(opp.size());
  for (std::size_t d = 0; d < opp.size(); ++d) face[d] = sigma[opp[d]];
  return orbit_count(sigma) - orbit_count(opp) + orbit_count(face);
}

// Directional derivative of L along a dart-space direction by central differences.
inline double central_difference(const uniformize::WeightedMap& wm, const uniformize::AngleSystem& psi,
                                 const Eigen::VectorXd& dir, double h) {
  uniformize::AngleSystem plus = psi, minus = psi;
  for (std::size_t d = 0; d < psi.psi.size(); ++d) {
    plus.psi[d] += h * dir(static_cast<Eigen::Index>(d));
    minus.psi[d] -= h * dir(static_cast<Eigen::Index>(d));
  }
  return (uniformize::functional_value(wm, plus) - uniformize::functional_value(wm, minus)) / (2 * h);
}

}  // namespace testing
