#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uniformize/angles.hpp"
#include "uniformize/catalog.hpp"
#include "uniformize/error.hpp"
#include "uniformize/flow.hpp"
#include "uniformize/lobachevsky.hpp"
#include "uniformize/solver.hpp"

using namespace uniformize;
using testing::kPi;

namespace {

struct Case {
  const char* name;
  std::optional<int> face;
};

const Case kCases[] = {{"tetrahedron", std::nullopt}, {"octahedron", std::nullopt}, {"cube", 0},
                       {"octahedron", 3},             {"torus2x2", std::nullopt},   {"torus3x3", std::nullopt},
                       {"genus2", std::nullopt}};

AngleSystem random_member(const WeightedMap& wm, std::optional<int> face, unsigned long long seed) {
  return perturbed_start(wm, initial_angle_system(wm, face), 0.05, seed);
}

// ΣЛ(ψ̂) - ΣЛ(γ̂) - ΣЛ(η̂) - ΣЛ(θ) with each sum written out from the definitions.
double normal_form(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  double total = 0.0;
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const double th = wm.theta(e);
    const double eta = 0.5 * (psi.psi[s] + psi.psi[t] - th);
    total += lob(psi.psi[s] - eta) + lob(psi.psi[t] - eta) - lob(kPi - th - eta) - lob(eta) - lob(th);
  }
  return total;
}

}  // namespace

TEST_CASE("hat quantities follow their definitions") {
  const WeightedMap wm = catalog::example("genus2");
  const AngleSystem psi = random_member(wm, std::nullopt, 1);
  const HatData h = hat_data(wm, psi.psi);
  const SurfaceMap& m = wm.map();
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const double th = wm.theta(e);
    CHECK(h.eta_hat[e] == doctest::Approx(0.5 * (psi.psi[s] + psi.psi[t] - th)));
    CHECK(h.psi_hat[s] + h.psi_hat[t] == doctest::Approx(th));
    CHECK(h.gamma_hat[e] + h.eta_hat[e] == doctest::Approx(kPi - th));
  }
}

TEST_CASE("functional formulas agree on random members") {
  for (const Case& c : kCases) {
    CAPTURE(c.name);
    const WeightedMap wm = catalog::example(c.name);
    for (unsigned long long seed = 1; seed <= 4; ++seed) {
      const AngleSystem psi = random_member(wm, c.face, seed);
      REQUIRE(is_member(wm, psi).member);
      const double l = functional_value(wm, psi);
      CHECK(std::abs(l - functional_value_split(wm, psi)) < 1e-10);
      if (!psi.stereographic()) CHECK(std::abs(l - normal_form(wm, psi)) < 1e-10);
    }
  }
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  for (const Case& c : kCases) {
    CAPTURE(c.name);
    const WeightedMap wm = catalog::example(c.name);
    for (unsigned long long seed = 1; seed <= 3; ++seed) {
      const AngleSystem psi = random_member(wm, c.face, seed);
      const Eigen::MatrixXd basis = tangent_basis(wm, psi);
      if (basis.cols() == 0) continue;
      const Eigen::VectorXd grad = gradient(wm, psi, basis);
      for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXd coef(basis.cols());
        for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = gauss(rng);
        Eigen::VectorXd dir = basis * coef;
        const double scale = dir.cwiseAbs().maxCoeff();
        dir /= scale;
        coef /= scale;
        const double fd = testing::central_difference(wm, psi, dir, 1e-5);
        const double exact = grad.dot(coef);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("reduced Hessian matches differences of the gradient") {
  for (const Case& c : kCases) {
    CAPTURE(c.name);
    const WeightedMap wm = catalog::example(c.name);
    const AngleSystem psi = random_member(wm, c.face, 5);
    const Eigen::MatrixXd basis = tangent_basis(wm, psi);
    if (basis.cols() == 0) continue;
    const Eigen::MatrixXd h = reduced_hessian(wm, psi, basis);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const double step = 1e-6;
    for (Eigen::Index j = 0; j < std::min<Eigen::Index>(basis.cols(), 4); ++j) {
      AngleSystem plus = psi, minus = psi;
      for (int d = 0; d < wm.map().dart_count(); ++d) {
        plus.psi[d] += step * basis(d, j);
        minus.psi[d] -= step * basis(d, j);
      }
      const Eigen::VectorXd fd = (gradient(wm, plus, basis) - gradient(wm, minus, basis)) / (2 * step);
      CHECK((fd - h.col(j)).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, h.col(j).cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("the functional is concave along random lines") {
  for (const Case& c : kCases) {
    if (!c.face && std::string(c.name) != "genus2" && std::string(c.name) != "torus3x3") continue;
    CAPTURE(c.name);
    const WeightedMap wm = catalog::example(c.name);
    const AngleSystem psi = random_member(wm, c.face, 8);
    const Eigen::MatrixXd basis = tangent_basis(wm, psi);
    if (basis.cols() == 0) continue;
    const Eigen::MatrixXd h = reduced_hessian(wm, psi, basis);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    CHECK(eig.eigenvalues().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("tangent directions preserve membership") {
  for (const Case& c : kCases) {
    CAPTURE(c.name);
    const WeightedMap wm = catalog::example(c.name);
    const AngleSystem psi = initial_angle_system(wm, c.face);
    const Eigen::MatrixXd basis = tangent_basis(wm, psi);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      AngleSystem moved = psi;
      for (int d = 0; d < wm.map().dart_count(); ++d) moved.psi[d] += 1e-4 * basis(d, j);
      CHECK(is_member(wm, moved).member);
    }
  }
}

TEST_CASE("null space") {
  const Eigen::MatrixXd a{{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 2, 1, 0}};
  const Eigen::MatrixXd n = null_space(a);
  CHECK(n.cols() == 2);
  CHECK((a * n).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(n).rank() == 2);
}

TEST_CASE("loop vectors of faces are tangent on the torus") {
  const WeightedMap wm = catalog::example("torus2x2");
  const SurfaceMap& m = wm.map();
  const AngleSystem psi = initial_angle_system(wm);
  for (int f = 0; f < m.face_count(); ++f) {
    const auto& walk = m.darts_of_face(f);
    const Eigen::VectorXd u = loop_vector(m, walk);
    AngleSystem moved = psi;
    for (int d = 0; d < m.dart_count(); ++d) moved.psi[d] += 1e-3 * u(d);
    CHECK(is_member(wm, moved).member);
  }
}

TEST_CASE("stereographic subspace of the cube") {
  const WeightedMap wm = catalog::example("cube");
  const StereoSubspace sub = stereographic_subspace(wm, 0);
  CHECK(sub.v_star.size() == 4);
  CHECK(sub.e_star.size() == 4);
  CHECK(sub.s_star.size() == 8);
  for (int v : sub.v_star) CHECK(sub.theta_v[v] == doctest::Approx(kPi / 2));
  const SurfaceMap& m = wm.map();
  for (int d = 0; d < m.dart_count(); ++d) {
    if (sub.in_s_star[d]) continue;
    const bool tail = sub.on_face[m.vertex_of(d)], head = sub.on_face[m.head_of(d)];
    if (tail && head) CHECK(sub.boundary_psi[d] == kPi / 2);
    else if (tail) CHECK(sub.boundary_psi[d] == 0.0);
    else CHECK(sub.boundary_psi[d] == wm.theta_of_dart(d));
  }
}

TEST_CASE("stereographic tetrahedron has an empty free part") {
  const WeightedMap wm = catalog::example("tetrahedron");
  const StereoSubspace sub = stereographic_subspace(wm, 0);
  CHECK(sub.v_star.size() == 1);
  CHECK(sub.s_star.empty());
  CHECK(std::abs(sub.theta_v[sub.v_star[0]]) < 1e-12);
  const AngleSystem psi = stereographic_system(wm, sub, sub.boundary_psi);
  CHECK(is_member(wm, psi).member);
  CHECK(tangent_basis(wm, psi).cols() == 0);
}

TEST_CASE("stereographic errors") {
  CHECK_THROWS_AS(stereographic_subspace(catalog::example("torus2x2"), 0), Error);
  try {
    stereographic_subspace(catalog::example("cube"), 6);
    FAIL("expected InvalidFace");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidFace);
  }
  try {
    stereographic_subspace(catalog::example("truncated_tetrahedron"), 0);
    FAIL("expected NonpositiveThetaV");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveThetaV);
  }
}

TEST_CASE("membership reports violations") {
  const WeightedMap wm = catalog::example("torus2x2");
  AngleSystem psi = initial_angle_system(wm);
  CHECK(is_member(wm, psi).member);
  psi.psi[0] += 0.1;
  const MembershipReport r = is_member(wm, psi);
  CHECK_FALSE(r.member);
  bool c2 = false;
  for (const auto& v : r.violations) c2 = c2 || v.constraint == "C2";
  CHECK(c2);
}

TEST_CASE("functional rejects points outside the closed domain") {
  const WeightedMap wm = catalog::example("genus2");
  AngleSystem psi = initial_angle_system(wm);
  psi.psi[0] = -0.5;
  CHECK_THROWS_AS(functional_value(wm, psi), Error);
}

TEST_CASE("projective quotient of the cube") {
  const auto sym = catalog::cube_with_antipodal_map();
  const WeightedMap wm = with_uniform_weight(sym.map, kPi / 2);
  const ProjectiveQuotient q = projective_quotient(wm, sym.involution);
  CHECK(q.vertex_count() == 4);
  CHECK(q.edge_count() == 6);
  CHECK(q.face_count == 3);
  CHECK(q.chi() == 1);

  // an antipodally symmetric member reduces to a member of the quotient
  const AngleSystem avg = initial_angle_system(wm);
  const ProjectiveReduction red = reduce_projective(wm, sym.involution, avg);
  CHECK(is_member(q, red.psi).member);
  for (int s = 0; s < q.dart_count(); ++s) {
    const int lift = q.representative[s];
    CHECK(red.psi[s] == doctest::Approx(0.5 * (avg.psi[lift] + avg.psi[sym.involution[lift]])));
  }
}

TEST_CASE("projective quotient rejects bad involutions") {
  const auto sym = catalog::cube_with_antipodal_map();
  const WeightedMap wm = with_uniform_weight(sym.map, kPi / 2);
  std::vector<int> identity(wm.map().dart_count());
  for (int d = 0; d < wm.map().dart_count(); ++d) identity[d] = d;
  CHECK_THROWS_AS(projective_quotient(wm, identity), Error);
  std::vector<int> swapped = sym.involution;
  std::swap(swapped[0], swapped[1]);
  CHECK_THROWS_AS(projective_quotient(wm, swapped), Error);
  CHECK_THROWS_AS(projective_quotient(catalog::example("torus2x2"), identity), Error);
}
