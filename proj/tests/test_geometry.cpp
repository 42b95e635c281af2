#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uniformize/catalog.hpp"
#include "uniformize/error.hpp"
#include "uniformize/flow.hpp"
#include "uniformize/geometry.hpp"
#include "uniformize/lobachevsky.hpp"
#include "uniformize/solver.hpp"

using namespace uniformize;
using testing::kPi;

namespace {

AngleSystem solved(const WeightedMap& wm, std::optional<int> face = std::nullopt) {
  return maximize(wm, initial_angle_system(wm, face)).psi;
}

// cos of the side opposite gamma from the angle-side law of cosines.
double cos_side(double alpha, double beta, double gamma) {
  return (std::cos(gamma) + std::cos(alpha) * std::cos(beta)) / (std::sin(alpha) * std::sin(beta));
}

}  // namespace

TEST_CASE("triangle legs satisfy the law of cosines") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  int hyper = 0, sphere = 0;
  while (hyper < 200 || sphere < 200) {
    const double a = u(rng), b = u(rng), g = u(rng);
    const double excess = a + b + g - kPi;
    if (std::abs(excess) < 1e-2) continue;
    // the other two angles must also satisfy the excess box
    if (excess < 0 && hyper < 200) {
      const TriangleShape t = triangle_legs(a, b, g, -1);
      CHECK(std::cosh(t.c) == doctest::Approx(cos_side(a, b, g)).epsilon(1e-9));
      CHECK(std::cosh(t.a) == doctest::Approx(cos_side(b, g, a)).epsilon(1e-9));
      CHECK(std::cosh(t.b) == doctest::Approx(cos_side(g, a, b)).epsilon(1e-9));
      ++hyper;
    } else if (excess > 0 && sphere < 200 && a + b - g < kPi && b + g - a < kPi && g + a - b < kPi) {
      const TriangleShape t = triangle_legs(a, b, g, 1);
      CHECK(std::cos(t.c) == doctest::Approx(cos_side(a, b, g)).epsilon(1e-9));
      CHECK(std::cos(t.a) == doctest::Approx(cos_side(b, g, a)).epsilon(1e-9));
      ++sphere;
    }
  }
  const TriangleShape e = triangle_legs(0.5, 1.0, kPi - 1.5, 0);
  CHECK(e.a == doctest::Approx(std::sin(0.5)));
  CHECK(e.b / std::sin(1.0) == doctest::Approx(e.a / std::sin(0.5)));
  CHECK(e.c / std::sin(kPi - 1.5) == doctest::Approx(e.a / std::sin(0.5)));
  CHECK_THROWS_AS(triangle_legs(1.2, 1.2, 1.2, -1), Error);
  CHECK_THROWS_AS(triangle_legs(-0.1, 1.0, 1.0, 1), Error);
}

TEST_CASE("hyperbolic legs approach the Euclidean ratios") {
  double prev = 1.0;
  for (double d : {1e-1, 1e-2, 1e-3}) {
    const double a = kPi / 3 - d, b = kPi / 3 - d, g = kPi / 3 - d;
    const TriangleShape t = triangle_legs(a + 0.1, b - 0.05, g - 0.05, -1);
    const double ratio = (t.a / t.b) / (std::sin(a + 0.1) / std::sin(b - 0.05));
    CHECK(std::abs(ratio - 1.0) < prev);
    prev = std::abs(ratio - 1.0);
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("torus layout: equal orthogonal circles") {
  const WeightedMap wm = catalog::example("torus2x2");
  const AngleSystem psi = solved(wm);
  const DiskConfiguration cfg = layout(wm, psi);
  CHECK(cfg.chart == Chart::plane);
  const ConfigurationResiduals r = check_configuration(cfg, wm);
  CHECK(r.max_angle < 1e-10);
  CHECK(r.max_concurrency < 1e-10);
  for (const Disk& d : cfg.disks) CHECK(d.radius == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(cfg.translations.size() >= 2);
}

TEST_CASE("genus two configuration") {
  const WeightedMap wm = catalog::example("genus2");
  const AngleSystem psi = solved(wm);
  const HatData h = hat_data(wm, psi.psi);
  double eta_sum = 0.0;
  for (double eta : h.eta_hat) {
    CHECK(eta < 0.0);
    eta_sum += 2 * eta;
  }
  CHECK(std::abs(eta_sum - kPi * wm.chi()) < 1e-9);
  const DiskConfiguration cfg = layout(wm, psi);
  CHECK(cfg.chart == Chart::poincare);
  const ConfigurationResiduals r = check_configuration(cfg, wm);
  CHECK(std::abs(r.quad_area_sum - (-2 * kPi * wm.chi())) < 1e-8);
  CHECK(r.max_angle < 1e-6);
  CHECK(r.max_concurrency < 1e-6);
  for (const Disk& d : cfg.disks) CHECK(std::abs(d.center) < 1.0);
}

TEST_CASE("distances do not depend on the root of the layout") {
  const WeightedMap wm = catalog::example("genus2");
  const AngleSystem psi = solved(wm);
  const DiskConfiguration a = layout(wm, psi);
  LayoutOptions opts;
  opts.root_dart = 17;
  const DiskConfiguration b = layout(wm, psi, opts);
  const SurfaceMap& m = wm.map();
  for (int v = 0; v < m.vertex_count(); ++v) {
    CHECK(a.disks[v].radius == doctest::Approx(b.disks[v].radius).epsilon(1e-9));
    for (int d : m.darts_at_vertex(v)) {
      const int f = m.face_of(d);
      const double da = chart_distance(a, a.frames[d](0.0), a.face_points[f]);
      const double db = chart_distance(b, b.frames[d](0.0), b.face_points[f]);
      CHECK(da == doctest::Approx(db).epsilon(1e-9));
    }
  }
}

TEST_CASE("layout refuses non-critical input") {
  const WeightedMap wm = catalog::example("genus2");
  const AngleSystem start = perturbed_start(wm, initial_angle_system(wm), 0.05, 1);
  try {
    layout(wm, start);
    FAIL("expected NotCritical");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCritical);
  }
}

TEST_CASE("sphere stereographic layouts") {
  for (const char* name : {"tetrahedron", "cube", "octahedron"}) {
    CAPTURE(name);
    const WeightedMap wm = catalog::example(name);
    const DiskConfiguration cfg = layout(wm, solved(wm, 0));
    CHECK(cfg.chart == Chart::stereographic);
    const ConfigurationResiduals r = check_configuration(cfg, wm);
    CHECK(r.max_angle < 1e-9);
    CHECK(r.max_concurrency < 1e-9);
  }
}

TEST_CASE("volumes of the regular examples") {
  const double tetra = 3 * testing::lob_series(kPi / 3);
  const double octa = 8 * testing::catalan() / 2;
  const struct {
    const char* name;
    double volume;
  } cases[] = {{"tetrahedron", tetra}, {"cube", octa}, {"torus2x2", 2 * octa}};
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const WeightedMap wm = catalog::example(c.name);
    const AngleSystem psi = solved(wm, wm.chi() == 2 ? std::optional<int>(0) : std::nullopt);
    CHECK(std::abs(volume_functional(wm, psi) - c.volume) < 1e-7);
    CHECK(std::abs(volume_orthoschemes(wm, psi).total - c.volume) < 1e-7);
  }
}

TEST_CASE("orthoscheme decomposition edge by edge") {
  const WeightedMap wm = catalog::example("genus2");
  const AngleSystem psi = solved(wm);
  const OrthoschemeVolume v = volume_orthoschemes(wm, psi);
  for (std::size_t e = 0; e < v.edge_sum.size(); ++e) CHECK(std::abs(v.edge_sum[e] - v.edge_reference[e]) < 1e-10);
  CHECK(std::abs(v.total - volume_functional(wm, psi)) < 1e-9);
}

TEST_CASE("svg output") {
  const WeightedMap wm = catalog::example("genus2");
  const DiskConfiguration cfg = layout(wm, solved(wm));
  RenderOptions opts;
  opts.overlay_quads = true;
  const std::string a = svg_string(cfg, wm, opts);
  CHECK(a == svg_string(cfg, wm, opts));
  CHECK(a.rfind("<?xml", 0) == 0);
  std::size_t circles = 0;
  for (std::size_t p = a.find("<circle"); p != std::string::npos; p = a.find("<circle", p + 1)) ++circles;
  CHECK(circles == static_cast<std::size_t>(wm.map().vertex_count()) + 1);  // plus the boundary
  CHECK(a.find("<path") != std::string::npos);

  const WeightedMap torus = catalog::example("torus2x2");
  const DiskConfiguration tc = layout(torus, solved(torus));
  RenderOptions copies;
  copies.copies = 1;
  const std::string t = svg_string(tc, torus, copies);
  circles = 0;
  for (std::size_t p = t.find("<circle"); p != std::string::npos; p = t.find("<circle", p + 1)) ++circles;
  CHECK(circles == 9 * 4);
}
