#include "uniformize/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>

#include "uniformize/geometry.hpp"

namespace uniformize {

namespace {

constexpr double kPi = std::numbers::pi;

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

bool is_interior(const WeightedMap& wm, const AngleSystem& psi, double margin) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi.psi);
  std::vector<char> rel(m.dart_count(), 1);
  if (psi.stereographic()) rel = stereographic_subspace(wm, psi.face).in_s_star;
  for (int d = 0; d < m.dart_count(); ++d) {
    if (!rel[d]) continue;
    if (!(h.psi_hat[d] >= margin && h.psi_hat[d] <= wm.theta_of_dart(d) - margin)) return false;
  }
  if (psi.stereographic() || wm.chi() == 0) return true;
  for (int e = 0; e < m.edge_count(); ++e) {
    const double eta = h.eta_hat[e], th = wm.theta(e);
    const bool ok = wm.chi() > 0 ? (eta >= margin && eta <= kPi - th - margin)
                                 : (eta >= -th + margin && eta <= -margin);
    if (!ok) return false;
  }
  return true;
}

SolveResult maximize(const WeightedMap& wm, const AngleSystem& psi0, const SolveOptions& opts) {
  if (!psi0.stereographic() && wm.chi() == 2)
    throw Error(ErrorCode::SphereNeedsFace, "sphere maps are solved on a stereographic face");
  if (!is_member(wm, psi0).member || !is_interior(wm, psi0, opts.interior_margin))
    throw Error(ErrorCode::NotInterior, "start point is not an interior coherent angle system");

  const Eigen::MatrixXd basis = tangent_basis(wm, psi0);
  SolveResult res;
  res.psi = psi0;
  res.value = functional_value(wm, res.psi);
  Eigen::VectorXd grad = gradient(wm, res.psi, basis);
  res.grad_norm = inf_norm(grad);

  for (int it = 0; it < opts.max_iter; ++it) {
    if (res.grad_norm < opts.grad_tol) {
      res.converged = true;
      return res;
    }
    const Eigen::MatrixXd neg_h = -reduced_hessian(wm, res.psi, basis);
    Eigen::VectorXd dir;
    bool newton = false;
    Eigen::LLT<Eigen::MatrixXd> llt(neg_h);
    if (llt.info() == Eigen::Success) {
      dir = llt.solve(grad);
      newton = dir.allFinite() && dir.dot(grad) > 0.0;
    }
    if (!newton) dir = grad;
    const Eigen::VectorXd step_dart = basis * dir;
    const double slope = dir.dot(grad);
    const double noise = 1e-14 * (1.0 + std::abs(res.value));

    double t = 1.0;
    bool accepted = false;
    AngleSystem trial = res.psi;
    double trial_value = 0.0;
    Eigen::VectorXd trial_grad;
    for (int ls = 0; ls < 200 && t > 1e-30; ++ls, t *= opts.line_search_shrink) {
      for (std::size_t d = 0; d < trial.psi.size(); ++d)
        trial.psi[d] = res.psi.psi[d] + t * step_dart(static_cast<Eigen::Index>(d));
      if (!is_interior(wm, trial, opts.interior_margin)) continue;
      trial_value = functional_value(wm, trial);
      if (trial_value >= res.value + 1e-4 * t * slope) {
        trial_grad = gradient(wm, trial, basis);
        accepted = true;
        break;
      }
      // close to the optimum the predicted gain drops below rounding; accept
      // steps that keep L within noise and shrink the gradient
      if (t * slope < noise && trial_value >= res.value - noise) {
        trial_grad = gradient(wm, trial, basis);
        if (inf_norm(trial_grad) < res.grad_norm) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;
    res.trace.push_back({it + 1, trial_value, res.grad_norm, t, newton});
    res.psi = trial;
    res.value = trial_value;
    grad = trial_grad;
    res.grad_norm = inf_norm(grad);
    res.iterations = it + 1;
  }
  if (res.grad_norm < opts.grad_tol) {
    res.converged = true;
    return res;
  }
  throw MaxIterError("no convergence: reduced gradient " + std::to_string(res.grad_norm), res);
}

AngleSystem perturbed_start(const WeightedMap& wm, const AngleSystem& psi, double amplitude,
                            unsigned long long seed) {
  const Eigen::MatrixXd basis = tangent_basis(wm, psi);
  if (basis.cols() == 0 || amplitude <= 0.0) return psi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd coef(basis.cols());
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = unit(rng);
  Eigen::VectorXd dir = basis * coef;
  const double scale = dir.cwiseAbs().maxCoeff();
  if (scale == 0.0) return psi;
  dir *= amplitude / scale;
  AngleSystem out = psi;
  for (int halvings = 0; halvings < 60; ++halvings, dir *= 0.5) {
    for (std::size_t d = 0; d < out.psi.size(); ++d) out.psi[d] = psi.psi[d] + dir(static_cast<Eigen::Index>(d));
    if (is_interior(wm, out, 1e-9) && is_member(wm, out).member) return out;
  }
  return psi;
}

CriticalityCertificate certify_critical(const WeightedMap& wm, const AngleSystem& psi, double grad_tol) {
  const SurfaceMap& m = wm.map();
  CriticalityCertificate c;
  c.reduced_grad_norm = inf_norm(gradient(wm, psi, tangent_basis(wm, psi)));
  const EdgeGeometry geo = edge_geometry(wm, psi);
  c.leg_spread = leg_spread(wm, geo);
  c.max_spread = *std::max_element(c.leg_spread.begin(), c.leg_spread.end());
  if (!psi.stereographic() && wm.chi() < 0) {
    const std::vector<double> ratio = glue_ratios(wm, psi);
    for (int v = 0; v < m.vertex_count(); ++v) {
      const auto& ds = m.darts_at_vertex(v);
      for (int s : ds) c.max_glue_deviation = std::max(c.max_glue_deviation, std::abs(ratio[s] - ratio[ds[0]]));
    }
  }
  c.passed = c.reduced_grad_norm < grad_tol && c.max_spread < 1e-7;
  return c;
}

}  // namespace uniformize
