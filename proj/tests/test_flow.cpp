#include <doctest.h>

#include <limits>

#include "support.hpp"
#include "uniformize/catalog.hpp"
#include "uniformize/error.hpp"
#include "uniformize/flow.hpp"

using namespace uniformize;
using testing::kPi;

namespace {

// Kirchhoff residual and bound violation of a flow, recomputed from the arcs.
void check_flow(const FlowNetwork& net, const std::vector<double>& flow) {
  REQUIRE(static_cast<int>(flow.size()) == net.arc_count());
  std::vector<double> balance(net.node_count(), 0.0);
  for (int i = 0; i < net.arc_count(); ++i) {
    const FlowArc& a = net.arcs[i];
    CHECK(flow[i] >= a.lower - 1e-12);
    CHECK(flow[i] <= a.upper + 1e-12);
    balance[a.from] -= flow[i];
    balance[a.to] += flow[i];
  }
  for (double b : balance) CHECK(std::abs(b) < 1e-9);
}

}  // namespace

TEST_CASE("torus network is feasible and forces the edge sums") {
  const WeightedMap wm = catalog::example("torus2x2");
  const FlowNetwork net = build_flow_network(wm, 0.1, 0.0);
  CHECK(net.node_count() == 4 + 8 + 1);
  CHECK(net.arc_count() == 16 + 8 + 4);
  const FlowResult r = find_compatible_flow(net);
  REQUIRE(r.feasible);
  check_flow(net, r.flow);
  std::vector<double> at_edge(wm.map().edge_count(), 0.0);
  for (int i = 0; i < net.arc_count(); ++i)
    if (net.arcs[i].dart >= 0) at_edge[wm.map().edge_of(net.arcs[i].dart)] += r.flow[i];
  for (int e = 0; e < wm.map().edge_count(); ++e) CHECK(std::abs(at_edge[e] - wm.theta(e)) < 1e-9);
}

TEST_CASE("isolated balanced node") {
  FlowNetwork net;
  net.kind = {NodeKind::vertex, NodeKind::edge, NodeKind::vertex, NodeKind::omega};
  net.element = {0, 0, 1, -1};
  net.omega = 3;
  net.cap = 10.0;
  net.arcs = {{1, 0, 1.0, std::numeric_limits<double>::infinity(), 0},
              {3, 1, -std::numeric_limits<double>::infinity(), 1.0, -1},
              {0, 3, 1.0, 1.0, -1}};
  const FlowResult r = find_compatible_flow(net);
  REQUIRE(r.feasible);
  check_flow(net, r.flow);
  for (double f : r.flow) CHECK(f == doctest::Approx(1.0));
}

TEST_CASE("small infeasible network yields a verified cut") {
  FlowNetwork net;
  net.kind = {NodeKind::vertex, NodeKind::omega};
  net.element = {0, -1};
  net.omega = 1;
  net.cap = 10.0;
  net.arcs = {{0, 1, 2.0, 2.0, -1}, {1, 0, 0.0, 1.0, -1}};
  const FlowResult r = find_compatible_flow(net);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.certificate);
  const CutCertificate c = evaluate_cut(net, r.certificate->nodes);
  CHECK(c.lower_sum > c.upper_sum);
  CHECK(c.nodes.size() == 1);
}

TEST_CASE("sign rules for epsilon and tau") {
  const WeightedMap torus = catalog::example("torus2x2");
  const WeightedMap genus2 = catalog::example("genus2");
  const WeightedMap cube = catalog::example("cube");
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code([&] { build_flow_network(torus, 0.0, 0.0); }) == ErrorCode::BadSigns);
  CHECK(code([&] { build_flow_network(torus, 0.1, 0.1); }) == ErrorCode::BadSigns);
  CHECK(code([&] { build_flow_network(genus2, 0.1, 0.1); }) == ErrorCode::BadSigns);
  CHECK(code([&] { build_flow_network(genus2, 0.1, 0.0); }) == ErrorCode::BadSigns);
  CHECK_NOTHROW(build_flow_network(genus2, 0.1, -0.1));
  const StereoSubspace sub = stereographic_subspace(cube, 0);
  CHECK(code([&] { build_flow_network(cube, 0.1, 0.1, &sub); }) == ErrorCode::BadSigns);
  CHECK_NOTHROW(build_flow_network(cube, 0.1, 0.0, &sub));
}

TEST_CASE("initial systems") {
  SUBCASE("torus has vanishing eta") {
    const WeightedMap wm = catalog::example("torus2x2");
    const AngleSystem psi = initial_angle_system(wm);
    CHECK(is_member(wm, psi).member);
    for (double eta : hat_data(wm, psi.psi).eta_hat) CHECK(std::abs(eta) < 1e-10);
  }
  SUBCASE("genus two has negative eta") {
    const WeightedMap wm = catalog::example("genus2");
    const AngleSystem psi = initial_angle_system(wm);
    CHECK(is_member(wm, psi).member);
    for (double eta : hat_data(wm, psi.psi).eta_hat) CHECK(eta < 0.0);
  }
  SUBCASE("stereographic and averaged sphere systems") {
    for (const char* name : {"tetrahedron", "cube", "octahedron"}) {
      CAPTURE(name);
      const WeightedMap wm = catalog::example(name);
      for (int f = 0; f < wm.map().face_count(); ++f) {
        const AngleSystem psi = initial_angle_system(wm, f);
        CHECK(psi.stereographic());
        CHECK(is_member(wm, psi).member);
      }
      const AngleSystem avg = initial_angle_system(wm);
      CHECK_FALSE(avg.stereographic());
      CHECK(is_member(wm, avg).member);
    }
  }
}

TEST_CASE("truncated tetrahedron is infeasible with a certificate") {
  const WeightedMap wm = catalog::example("truncated_tetrahedron");
  for (std::optional<int> face : {std::optional<int>{}, std::optional<int>{4}}) {
    try {
      initial_angle_system(wm, face);
      FAIL("expected Infeasible");
    } catch (const InfeasibleError& e) {
      CHECK(e.code() == ErrorCode::Infeasible);
      REQUIRE(e.certificate);
      REQUIRE(e.network);
      const CutCertificate c = evaluate_cut(*e.network, e.certificate->nodes);
      CHECK(c.lower_sum > c.upper_sum);
      CHECK(c.lower_sum == doctest::Approx(e.certificate->lower_sum));
      CHECK(c.upper_sum == doctest::Approx(e.certificate->upper_sum));
    }
  }
}

TEST_CASE("certificates are reproducible") {
  const WeightedMap wm = catalog::example("truncated_tetrahedron");
  const StereoSubspace sub = stereographic_subspace(wm, 4);
  const FlowNetwork net = build_flow_network(wm, 1e-3, 0.0, &sub);
  const FlowResult a = find_compatible_flow(net), b = find_compatible_flow(net);
  REQUIRE(a.certificate);
  REQUIRE(b.certificate);
  CHECK(a.certificate->nodes == b.certificate->nodes);
}
