#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "uniformize/catalog.hpp"
#include "uniformize/error.hpp"
#include "uniformize/map.hpp"
#include "uniformize/validate.hpp"

using namespace uniformize;
using testing::kPi;

namespace {

ErrorCode build_error(std::vector<int> opp, std::vector<int> next) {
  try {
    build_map(static_cast<int>(opp.size()), opp, next);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadInput;
}

// Conjugates both permutations by a random relabeling of the darts.
SurfaceMap relabel(const SurfaceMap& m, unsigned seed) {
  const int n = m.dart_count();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<int> opp(n), next(n);
  for (int d = 0; d < n; ++d) {
    opp[p[d]] = p[m.opposite(d)];
    next[p[d]] = p[m.next_at_vertex(d)];
  }
  return build_map(n, opp, next);
}

}  // namespace

TEST_CASE("tetrahedron orbit counts") {
  const SurfaceMap m = catalog::tetrahedron();
  CHECK(m.dart_count() == 12);
  CHECK(m.vertex_count() == 4);
  CHECK(m.edge_count() == 6);
  CHECK(m.face_count() == 4);
  CHECK(euler_characteristic(m) == 2);
}

TEST_CASE("torus grid orbit counts") {
  const SurfaceMap m = catalog::torus_grid(2, 2);
  CHECK(m.dart_count() == 16);
  CHECK(m.vertex_count() == 4);
  CHECK(m.edge_count() == 8);
  CHECK(m.face_count() == 4);
  CHECK(euler_characteristic(m) == 0);
}

TEST_CASE("genus two triangulation") {
  const SurfaceMap m = catalog::genus_two();
  CHECK(m.vertex_count() == 29);
  CHECK(m.edge_count() == 93);
  CHECK(m.face_count() == 62);
  CHECK(testing::chi_from_permutations(m) == -2);
  CHECK(euler_characteristic(m) == -2);
  for (int f = 0; f < m.face_count(); ++f) CHECK(m.darts_of_face(f).size() == 3);
}

TEST_CASE("malformed permutations are rejected") {
  CHECK(build_error({0, 2, 1, 3}, {0, 1, 2, 3}) == ErrorCode::FixedDart);
  CHECK(build_error({1, 2, 0, 3}, {0, 1, 2, 3}) == ErrorCode::NotInvolution);
  CHECK(build_error({1, 0, 0, 2}, {0, 1, 2, 3}) == ErrorCode::NotInvolution);
  // two separate single edges
  CHECK(build_error({1, 0, 3, 2}, {0, 1, 2, 3}) == ErrorCode::Disconnected);
  // one vertex holding both ends of the edge
  CHECK(build_error({1, 0}, {1, 0}) == ErrorCode::LoopEdge);
  CHECK(build_error({1, 0, 5}, {0, 1, 2}) == ErrorCode::BadInput);
}

TEST_CASE("weights must lie in (0, pi)") {
  CHECK_THROWS_AS(with_uniform_weight(catalog::tetrahedron(), kPi), Error);
  CHECK_THROWS_AS(with_uniform_weight(catalog::tetrahedron(), 0.0), Error);
  CHECK_THROWS_AS(WeightedMap(catalog::tetrahedron(), {1.0, 1.0}), Error);
}

TEST_CASE("structural properties hold on every catalog map") {
  for (const std::string& name : catalog::example_names()) {
    CAPTURE(name);
    const WeightedMap wm = catalog::example(name);
    const SurfaceMap& m = wm.map();
    for (int d = 0; d < m.dart_count(); ++d) {
      CHECK(m.opposite(m.opposite(d)) == d);
      CHECK(m.vertex_of(d) != m.head_of(d));
      CHECK(m.next_in_face(d) == m.next_at_vertex(m.opposite(d)));
      CHECK(m.face_of(m.opposite(d)) == m.face_of(m.next_at_vertex(d)));
    }
    CHECK(m.dart_count() == 2 * m.edge_count());
    CHECK(testing::chi_from_permutations(m) == m.euler_characteristic());
    for (unsigned seed = 1; seed <= 3; ++seed)
      CHECK(euler_characteristic(relabel(m, seed)) == m.euler_characteristic());
  }
}

TEST_CASE("validate accepts polyhedral weights") {
  for (const char* name : {"tetrahedron", "cube", "octahedron", "torus2x2", "torus3x3"}) {
    CAPTURE(name);
    const ValidationReport r = validate_weights(catalog::example(name), {});
    CHECK(r.verdict == Verdict::valid);
    CHECK(r.violated_loops.empty());
    CHECK_FALSE(r.flow_certificate);
  }
}

TEST_CASE("uniform n-gon weights 2pi/n have exact face equalities") {
  const WeightedMap wm = with_uniform_weight(catalog::cube(), 2 * kPi / 4);
  const ValidationReport r = validate_weights(wm, {});
  for (double res : r.face_residuals) CHECK(std::abs(res) < 1e-12);
  CHECK(r.verdict == Verdict::valid);
}

TEST_CASE("validate rejects the truncated tetrahedron with a certificate") {
  for (double theta : {kPi / 2, kPi / 3, 2 * kPi / 3}) {
    CAPTURE(theta);
    const WeightedMap wm = with_uniform_weight(catalog::truncated_tetrahedron(), theta);
    const ValidationReport r = validate_weights(wm, {});
    CHECK(r.verdict == Verdict::invalid);
    if (theta > kPi / 2) continue;  // rejected by the face equalities, no cut
    REQUIRE(r.flow_certificate);
    REQUIRE(r.flow_network);
    const CutCertificate again = evaluate_cut(*r.flow_network, r.flow_certificate->nodes);
    CHECK(again.lower_sum > again.upper_sum);
  }
}

TEST_CASE("bounded loop search flags a short separating cycle") {
  // Octahedron with θ = 2π/3 on the equator: the equator has Σ(π-θ) = 4π/3 < 2π.
  const SurfaceMap m = catalog::octahedron();
  std::vector<double> theta(m.edge_count(), kPi / 3);
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    if (m.vertex_of(s) < 4 && m.vertex_of(t) < 4) theta[e] = 2 * kPi / 3;
  }
  ValidateOptions opts;
  opts.flow_check = false;
  const ValidationReport r = validate_weights(WeightedMap(m, theta), opts);
  CHECK(r.verdict == Verdict::invalid);
  CHECK_FALSE(r.violated_loops.empty());
}
