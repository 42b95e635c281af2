#pragma once

#include <complex>
#include <string>
#include <vector>

#include "uniformize/angles.hpp"
#include "uniformize/map.hpp"

namespace uniformize {

using Complex = std::complex<double>;

struct TriangleShape {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  int curvature = 0;
  double a = 0.0, b = 0.0, c = 0.0;  // opposite alpha, beta, gamma
};

/// Side lengths of the triangle with the given angles in constant curvature -1, 0 or +1.
/// Euclidean sides are scaled so that a = sin α.
/// Throws Error{DegenerateTriangle} outside the admissible angle box.
TriangleShape triangle_legs(double alpha, double beta, double gamma, int curvature);

/// Per-dart legs of the quadrangle triangles. leg[s] is the side opposite ψ(s),
/// so leg[-s] is the radius estimate for the tail of s. In the Euclidean cases the
/// scale is propagated along a spanning traversal with leg[lowest dart] = 1 in
/// each component.
struct EdgeGeometry {
  int curvature = 0;
  std::vector<double> leg;              // per dart
  std::vector<double> center_distance;  // per edge
  std::vector<char> defined;            // per edge
};

EdgeGeometry edge_geometry(const WeightedMap& wm, const AngleSystem& psi);

/// Relative spread (max-min)/max of the radius estimates at each vertex; 0 where undefined.
std::vector<double> leg_spread(const WeightedMap& wm, const EdgeGeometry& geo);

/// Per dart s: sin|η̂| sin ψ̂(-s) / (sin ψ̂(s) sin γ̂), the squared half-tangent of the tail radius.
std::vector<double> glue_ratios(const WeightedMap& wm, const AngleSystem& psi);

/// Orientation-preserving Möbius map z -> (a z + b) / (c z + d).
struct Mobius {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  Complex operator()(Complex z) const { return (a * z + b) / (c * z + d); }
  Mobius operator*(const Mobius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

enum class Chart { poincare, plane, stereographic };

const char* to_string(Chart c);

struct Disk {
  bool placed = false;
  bool line = false;   // stereographic chart: half-plane {x : n·x >= offset}
  Complex center;      // chart point (hyperbolic center in the Poincaré chart)
  double radius = 0.0; // in the chart's metric
  Complex normal;      // unit inward normal for half-planes
  double offset = 0.0;
};

struct DiskConfiguration {
  Chart chart = Chart::plane;
  int curvature = 0;
  int root_dart = 0;
  std::vector<Disk> disks;               // per vertex
  std::vector<Complex> face_points;      // per face
  std::vector<char> face_placed;         // the stereographic face sits at infinity
  std::vector<Mobius> frames;            // per dart: tail center, pointing along the dart
  std::vector<char> dart_placed;
  std::vector<int> parent_dart;          // per vertex: dart the traversal arrived by, -1 at the root
  std::vector<double> center_distance;   // per edge
  std::vector<double> leg;               // per dart, layout scale
  std::vector<double> psi;               // angle system the layout was built from
  std::vector<Complex> translations;     // deck translations (torus charts)
};

struct LayoutOptions {
  int root_dart = -1;        // -1: lowest admissible dart
  double spread_tol = 1e-6;  // NotCritical above this leg spread
};

/// Throws Error{NotCritical, LayoutUnsupported}.
DiskConfiguration layout(const WeightedMap& wm, const AngleSystem& psi, const LayoutOptions& opts = {});

struct ConfigurationResiduals {
  std::vector<double> edge_angle;        // |realized θ - θ| per edge, NaN if not realized
  std::vector<double> face_concurrency;  // max distance defect per face
  std::vector<double> vertex_angle_sum;  // realized quadrangle angles summed at each vertex
  double max_angle = 0.0;
  double max_concurrency = 0.0;
  double quad_area_sum = 0.0;            // hyperbolic or Euclidean total
};

ConfigurationResiduals check_configuration(const DiskConfiguration& config, const WeightedMap& wm);

/// Distance in the chart's metric.
double chart_distance(const DiskConfiguration& config, Complex p, Complex q);

double volume_functional(const WeightedMap& wm, const AngleSystem& psi);

struct OrthoschemeVolume {
  double total = 0.0;
  std::vector<double> edge_sum;        // 2V(α,ω_γ(α,β)) + 2V(β,ω_γ(β,α)) per edge
  std::vector<double> edge_reference;  // I⁺_θ(ψ̂(s)) - I⁻_θ(η̂(e)) per edge
};

OrthoschemeVolume volume_orthoschemes(const WeightedMap& wm, const AngleSystem& psi);

struct RenderOptions {
  bool overlay_quads = false;
  int copies = 0;
};

/// Throws Error{IoError}.
void render_svg(const DiskConfiguration& config, const WeightedMap& wm, const std::string& path,
                const RenderOptions& opts = {});
std::string svg_string(const DiskConfiguration& config, const WeightedMap& wm,
                       const RenderOptions& opts = {});

}  // namespace uniformize
