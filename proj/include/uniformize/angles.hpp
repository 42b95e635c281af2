#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uniformize/map.hpp"

namespace uniformize {

enum class AngleMode { full, stereographic };

/// Per-dart angles ψ(s). In stereographic mode every dart carries a value:
/// darts outside S* hold the fixed boundary values of the chosen face.
struct AngleSystem {
  std::vector<double> psi;
  AngleMode mode = AngleMode::full;
  int face = -1;            // stereographic face, -1 in full mode
  int curvature_class = 0;  // sign of χ

  bool stereographic() const { return mode == AngleMode::stereographic; }
};

AngleSystem full_system(const WeightedMap& wm, std::vector<double> psi);

/// ψ̂ per dart, η̂ and γ̂ per edge.
struct HatData {
  std::vector<double> psi_hat;
  std::vector<double> eta_hat;
  std::vector<double> gamma_hat;
};

HatData hat_data(const WeightedMap& wm, std::span<const double> psi);

/// The affine slice of angle systems for a fixed face f of a sphere map.
struct StereoSubspace {
  int face = -1;
  std::vector<int> v_star;           // vertices not on f
  std::vector<int> e_star;           // edges with no endpoint on f
  std::vector<int> s_star;           // darts of E*
  std::vector<char> on_face;         // per vertex
  std::vector<char> in_s_star;       // per dart
  std::vector<double> theta_v;       // per vertex, 0 on f
  std::vector<double> boundary_psi;  // per dart, fixed value outside S*, 0 on S*
};

/// Throws Error{NotSphere, InvalidFace, NonpositiveThetaV}.
StereoSubspace stereographic_subspace(const WeightedMap& wm, int face);

/// Stereographic system with S* values taken from `psi` and boundary values from the table.
AngleSystem stereographic_system(const WeightedMap& wm, const StereoSubspace& sub,
                                 std::span<const double> psi);

struct ConstraintViolation {
  std::string constraint;  // "C2", "psi_hat", "eta_hat", "edge_sum", "boundary", "theta_v"
  int location = -1;       // vertex, dart or edge id depending on the constraint
  double magnitude = 0.0;
};

struct MembershipReport {
  bool member = true;
  std::vector<ConstraintViolation> violations;
};

struct MembershipTolerances {
  double equality = 1e-10;
  double interior_margin = 1e-12;
};

MembershipReport is_member(const WeightedMap& wm, const AngleSystem& psi,
                           const MembershipTolerances& tol = {});

/// L_Δ via Л of the hat quantities. Throws Error{DomainViolation} if some hat
/// value leaves its closed interval by more than `domain_tol`.
double functional_value(const WeightedMap& wm, const AngleSystem& psi, double domain_tol = 1e-9);

/// L_Δ assembled from I⁺ and I⁻; must agree with functional_value.
double functional_value_split(const WeightedMap& wm, const AngleSystem& psi);

/// ∂L/∂ψ(s) for every dart in `darts`, zero elsewhere. With `tangential` set the
/// γ̂/η̂ terms are dropped; they cancel along any U with U(s) = -U(-s).
/// Throws Error{BoundaryPoint} when a required log argument underflows.
std::vector<double> dart_gradient(const WeightedMap& wm, std::span<const double> psi,
                                  std::span<const int> darts, bool tangential);

/// Columns U_{e1,e2}: +1 on the first dart at a vertex, -1 on another dart there.
Eigen::MatrixXd vertex_pair_basis(const SurfaceMap& map);

/// The loop vector U_F of a closed dart walk d₁…dₙ (+1 on dᵢ, -1 on -dᵢ).
Eigen::VectorXd loop_vector(const SurfaceMap& map, std::span<const int> walk);

/// Null space of `a` by Gauss-Jordan elimination with partial pivoting.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double pivot_tol = 1e-12);

/// Basis of the tangent space of the feasible slice containing `psi`.
Eigen::MatrixXd tangent_basis(const WeightedMap& wm, const AngleSystem& psi);

/// True when every column satisfies U(s) + U(-s) = 0.
bool is_edge_antisymmetric(const SurfaceMap& map, const Eigen::MatrixXd& basis);

/// Directional derivatives D L·U for every column U of `basis`.
Eigen::VectorXd gradient(const WeightedMap& wm, const AngleSystem& psi,
                         const Eigen::MatrixXd& basis);

/// Uᵀ H U with H the Hessian of L in dart coordinates. H is block diagonal over
/// edges; the γ̂/η̂ block is skipped for edge-antisymmetric bases.
Eigen::MatrixXd reduced_hessian(const WeightedMap& wm, const AngleSystem& psi,
                                const Eigen::MatrixXd& basis);

/// Quotient of a sphere map by a free involution (projective plane).
struct ProjectiveQuotient {
  std::vector<int> dart_class;      // sphere dart -> quotient dart
  std::vector<int> representative;  // quotient dart -> smallest lift
  std::vector<int> opposite;        // on quotient darts
  std::vector<int> edge_of;         // quotient dart -> quotient edge
  std::vector<double> theta;        // per quotient edge
  std::vector<std::vector<int>> darts_at_vertex;
  int face_count = 0;

  int dart_count() const { return static_cast<int>(representative.size()); }
  int vertex_count() const { return static_cast<int>(darts_at_vertex.size()); }
  int edge_count() const { return static_cast<int>(theta.size()); }
  int chi() const { return vertex_count() - edge_count() + face_count; }
};

/// Throws Error{NotSphere, InvolutionNotFree, NotAutomorphism, BadInput}.
ProjectiveQuotient projective_quotient(const WeightedMap& sphere, std::span<const int> involution);

struct ProjectiveReduction {
  ProjectiveQuotient quotient;
  std::vector<double> psi;  // per quotient dart
};

/// ψ̄(s) = ½(ψ(g(s̃)) + ψ(s̃)) for a lift s̃ of every quotient dart s.
ProjectiveReduction reduce_projective(const WeightedMap& sphere, std::span<const int> involution,
                                      const AngleSystem& psi);

MembershipReport is_member(const ProjectiveQuotient& quotient, std::span<const double> psi,
                           const MembershipTolerances& tol = {});

}  // namespace uniformize
