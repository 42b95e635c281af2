#pragma once

#include <vector>

#include "uniformize/angles.hpp"
#include "uniformize/error.hpp"
#include "uniformize/map.hpp"

namespace uniformize {

struct SolveOptions {
  double grad_tol = 1e-10;
  int max_iter = 200;
  double line_search_shrink = 0.5;
  double interior_margin = 1e-12;
};

struct SolveStep {
  int iteration = 0;
  double value = 0.0;      // L after the step
  double grad_norm = 0.0;  // reduced gradient before the step
  double step = 0.0;       // accepted line-search factor
  bool newton = true;      // false for a gradient fallback step
};

struct SolveResult {
  AngleSystem psi;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<SolveStep> trace;
};

class MaxIterError : public Error {
 public:
  MaxIterError(const std::string& message, SolveResult best)
      : Error(ErrorCode::MaxIterExceeded, message), best(std::move(best)) {}
  SolveResult best;
};

/// Damped Newton ascent of L over the affine slice through `psi0`.
/// Throws Error{SphereNeedsFace, NotInterior} and MaxIterError (carrying the best iterate).
SolveResult maximize(const WeightedMap& wm, const AngleSystem& psi0, const SolveOptions& opts = {});

struct CriticalityCertificate {
  double reduced_grad_norm = 0.0;
  std::vector<double> leg_spread;  // per vertex
  double max_spread = 0.0;
  double max_glue_deviation = 0.0;  // hyperbolic case only
  bool passed = false;
};

CriticalityCertificate certify_critical(const WeightedMap& wm, const AngleSystem& psi,
                                        double grad_tol = 1e-10);

/// Moves `psi` by up to `amplitude` (∞-norm in dart space) along a random tangent
/// direction drawn from `seed`, halving the step until the result stays interior.
AngleSystem perturbed_start(const WeightedMap& wm, const AngleSystem& psi, double amplitude,
                            unsigned long long seed);

/// True if all hat values lie strictly inside their intervals by at least `margin`.
bool is_interior(const WeightedMap& wm, const AngleSystem& psi, double margin);

}  // namespace uniformize
