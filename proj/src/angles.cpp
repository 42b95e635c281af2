#include "uniformize/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uniformize/error.hpp"
#include "uniformize/lobachevsky.hpp"

namespace uniformize {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(int x) { return (x > 0) - (x < 0); }

void check_size(const WeightedMap& wm, std::span<const double> psi) {
  if (static_cast<int>(psi.size()) != wm.map().dart_count())
    throw Error(ErrorCode::BadInput, "angle system has " + std::to_string(psi.size()) +
                                         " entries, map has " +
                                         std::to_string(wm.map().dart_count()) + " darts");
}

double log_2sin(double x) {
  const double a = std::abs(2.0 * std::sin(x));
  if (a < 1e-300) throw Error(ErrorCode::BoundaryPoint, "log|2 sin x| at x = " + std::to_string(x));
  return std::log(a);
}

bool stereo_edge(const StereoSubspace& sub, const SurfaceMap& m, int e) {
  return sub.in_s_star[m.edge_darts(e)[0]] != 0;
}

// Interval constraint on η̂ for a given edge: lo/hi and whether it collapses to a point.
struct EtaBox {
  double lo, hi;
  bool point;
};

EtaBox eta_box(const WeightedMap& wm, const AngleSystem& psi, const StereoSubspace* sub, int e) {
  const double th = wm.theta(e);
  if (psi.stereographic()) {
    if (sub && stereo_edge(*sub, wm.map(), e)) return {0.0, 0.0, true};
    return {0.0, kPi - th, false};
  }
  switch (sign_of(wm.chi())) {
    case 1: return {0.0, kPi - th, false};
    case 0: return {0.0, 0.0, true};
    default: return {-th, 0.0, false};
  }
}

}  // namespace

AngleSystem full_system(const WeightedMap& wm, std::vector<double> psi) {
  check_size(wm, psi);
  AngleSystem a;
  a.psi = std::move(psi);
  a.mode = AngleMode::full;
  a.curvature_class = sign_of(wm.chi());
  return a;
}

HatData hat_data(const WeightedMap& wm, std::span<const double> psi) {
  check_size(wm, psi);
  const SurfaceMap& m = wm.map();
  HatData h;
  h.psi_hat.resize(m.dart_count());
  h.eta_hat.resize(m.edge_count());
  h.gamma_hat.resize(m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const double th = wm.theta(e);
    const double eta = 0.5 * (psi[s] + psi[t] - th);
    h.eta_hat[e] = eta;
    h.gamma_hat[e] = kPi - th - eta;
    h.psi_hat[s] = psi[s] - eta;
    h.psi_hat[t] = psi[t] - eta;
  }
  return h;
}

StereoSubspace stereographic_subspace(const WeightedMap& wm, int face) {
  const SurfaceMap& m = wm.map();
  if (wm.chi() != 2) throw Error(ErrorCode::NotSphere, "stereographic data need a sphere map");
  if (face < 0 || face >= m.face_count())
    throw Error(ErrorCode::InvalidFace, "face " + std::to_string(face) + " does not exist");

  StereoSubspace sub;
  sub.face = face;
  sub.on_face.assign(m.vertex_count(), 0);
  for (int d : m.darts_of_face(face)) sub.on_face[m.vertex_of(d)] = 1;
  sub.in_s_star.assign(m.dart_count(), 0);
  sub.theta_v.assign(m.vertex_count(), 0.0);
  sub.boundary_psi.assign(m.dart_count(), 0.0);

  for (int v = 0; v < m.vertex_count(); ++v)
    if (!sub.on_face[v]) sub.v_star.push_back(v);

  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const bool fs = sub.on_face[m.vertex_of(s)], ft = sub.on_face[m.vertex_of(t)];
    const double th = wm.theta(e);
    if (!fs && !ft) {
      sub.e_star.push_back(e);
      sub.in_s_star[s] = sub.in_s_star[t] = 1;
    } else if (fs && ft) {
      sub.boundary_psi[s] = sub.boundary_psi[t] = kPi / 2;
    } else {
      sub.boundary_psi[s] = fs ? 0.0 : th;
      sub.boundary_psi[t] = ft ? 0.0 : th;
    }
  }
  for (int d = 0; d < m.dart_count(); ++d)
    if (sub.in_s_star[d]) sub.s_star.push_back(d);

  constexpr double tol = 1e-9;
  for (int v : sub.v_star) {
    double tv = kPi;
    bool has_star = false;
    for (int d : m.darts_at_vertex(v)) {
      if (sub.in_s_star[d])
        has_star = true;
      else
        tv -= wm.theta_of_dart(d);
    }
    sub.theta_v[v] = tv;
    if (tv < -tol || (has_star && tv <= tol))
      throw Error(ErrorCode::NonpositiveThetaV,
                  "theta(v) = " + std::to_string(tv) + " at vertex " + std::to_string(v));
  }
  return sub;
}

AngleSystem stereographic_system(const WeightedMap& wm, const StereoSubspace& sub,
                                 std::span<const double> psi) {
  check_size(wm, psi);
  AngleSystem a;
  a.mode = AngleMode::stereographic;
  a.face = sub.face;
  a.curvature_class = sign_of(wm.chi());
  a.psi = sub.boundary_psi;
  for (int d : sub.s_star) a.psi[d] = psi[d];
  return a;
}

MembershipReport is_member(const WeightedMap& wm, const AngleSystem& psi,
                           const MembershipTolerances& tol) {
  const SurfaceMap& m = wm.map();
  MembershipReport r;
  auto flag = [&r](const char* what, int where, double mag) {
    r.member = false;
    r.violations.push_back({what, where, mag});
  };
  if (static_cast<int>(psi.psi.size()) != m.dart_count()) {
    flag("size", -1, std::abs(static_cast<double>(psi.psi.size()) - m.dart_count()));
    return r;
  }
  const HatData h = hat_data(wm, psi.psi);

  StereoSubspace sub;
  const StereoSubspace* sp = nullptr;
  if (psi.stereographic()) {
    try {
      sub = stereographic_subspace(wm, psi.face);
      sp = &sub;
    } catch (const Error& e) {
      flag("theta_v", -1, 0.0);
      return r;
    }
  }

  if (!sp) {
    for (int v = 0; v < m.vertex_count(); ++v) {
      double sum = 0.0;
      for (int d : m.darts_at_vertex(v)) sum += psi.psi[d];
      if (std::abs(sum - kPi) > tol.equality) flag("C2", v, std::abs(sum - kPi));
    }
  } else {
    for (int v : sub.v_star) {
      double sum = 0.0;
      for (int d : m.darts_at_vertex(v))
        if (sub.in_s_star[d]) sum += psi.psi[d];
      const double target = sub.theta_v[v];
      bool any = false;
      for (int d : m.darts_at_vertex(v)) any = any || sub.in_s_star[d];
      if ((any || target > tol.equality) && std::abs(sum - target) > tol.equality)
        flag("C2", v, std::abs(sum - target));
    }
    for (int d = 0; d < m.dart_count(); ++d) {
      if (sub.in_s_star[d]) continue;
      const double dev = std::abs(psi.psi[d] - sub.boundary_psi[d]);
      if (dev > tol.equality) flag("boundary", d, dev);
    }
  }

  for (int d = 0; d < m.dart_count(); ++d) {
    if (sp && !sub.in_s_star[d]) continue;
    const double th = wm.theta_of_dart(d);
    const double x = h.psi_hat[d];
    if (x < tol.interior_margin) flag("psi_hat", d, tol.interior_margin - x);
    if (x > th - tol.interior_margin) flag("psi_hat", d, x - th + tol.interior_margin);
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    if (sp && !stereo_edge(sub, m, e)) continue;
    const EtaBox b = eta_box(wm, psi, sp, e);
    const double eta = h.eta_hat[e];
    if (b.point) {
      if (std::abs(eta) > tol.equality) flag(sp ? "edge_sum" : "eta_hat", e, std::abs(eta));
    } else {
      if (eta < b.lo + tol.interior_margin) flag("eta_hat", e, b.lo + tol.interior_margin - eta);
      if (eta > b.hi - tol.interior_margin) flag("eta_hat", e, eta - b.hi + tol.interior_margin);
    }
  }
  return r;
}

double functional_value(const WeightedMap& wm, const AngleSystem& psi, double domain_tol) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi.psi);
  StereoSubspace sub;
  const StereoSubspace* sp = nullptr;
  if (psi.stereographic()) {
    sub = stereographic_subspace(wm, psi.face);
    sp = &sub;
  }
  double total = 0.0;
  for (int d = 0; d < m.dart_count(); ++d) {
    const double x = h.psi_hat[d];
    if (x < -domain_tol || x > wm.theta_of_dart(d) + domain_tol)
      throw Error(ErrorCode::DomainViolation, "psi_hat(" + std::to_string(d) + ") = " +
                                                  std::to_string(x) + " outside [0, theta]");
    total += lob(x);
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    const EtaBox b = eta_box(wm, psi, sp, e);
    const double eta = h.eta_hat[e];
    if (eta < b.lo - domain_tol || eta > b.hi + domain_tol)
      throw Error(ErrorCode::DomainViolation,
                  "eta_hat(" + std::to_string(e) + ") = " + std::to_string(eta) + " out of range");
    total -= lob(h.gamma_hat[e]) + lob(eta) + lob(wm.theta(e));
  }
  return total;
}

double functional_value_split(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi.psi);
  double total = 0.0;
  for (int d = 0; d < m.dart_count(); ++d) total += 0.5 * i_plus(wm.theta_of_dart(d), h.psi_hat[d]);
  for (int e = 0; e < m.edge_count(); ++e) total -= i_minus(wm.theta(e), h.eta_hat[e]);
  return total;
}

std::vector<double> dart_gradient(const WeightedMap& wm, std::span<const double> psi,
                                  std::span<const int> darts, bool tangential) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi);
  std::vector<double> g(m.dart_count(), 0.0);
  for (int d : darts) {
    const int e = m.edge_of(d);
    double v = -log_2sin(h.psi_hat[d]) + log_2sin(h.psi_hat[m.opposite(d)]);
    if (!tangential) v += -log_2sin(h.gamma_hat[e]) + log_2sin(h.eta_hat[e]);
    g[d] = 0.5 * v;
  }
  return g;
}

Eigen::MatrixXd vertex_pair_basis(const SurfaceMap& map) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(map.dart_count(), map.dart_count() - map.vertex_count());
  int col = 0;
  for (int v = 0; v < map.vertex_count(); ++v) {
    const auto& ds = map.darts_at_vertex(v);
    for (std::size_t i = 1; i < ds.size(); ++i, ++col) {
      u(ds[0], col) = 1.0;
      u(ds[i], col) = -1.0;
    }
  }
  return u;
}

Eigen::VectorXd loop_vector(const SurfaceMap& map, std::span<const int> walk) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(map.dart_count());
  for (int d : walk) {
    u(d) += 1.0;
    u(map.opposite(d)) -= 1.0;
  }
  return u;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double pivot_tol) {
  Eigen::MatrixXd r = a;
  const Eigen::Index rows = r.rows(), cols = r.cols();
  std::vector<Eigen::Index> pivots;
  std::vector<char> is_pivot(cols, 0);
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < cols && row < rows; ++c) {
    Eigen::Index best;
    const double mag = r.col(c).segment(row, rows - row).cwiseAbs().maxCoeff(&best);
    if (mag <= pivot_tol) continue;
    best += row;
    r.row(row).swap(r.row(best));
    r.row(row) /= r(row, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != row && r(i, c) != 0.0) r.row(i) -= r(i, c) * r.row(row);
    pivots.push_back(c);
    is_pivot[c] = 1;
    ++row;
  }
  const Eigen::Index nfree = cols - static_cast<Eigen::Index>(pivots.size());
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(cols, nfree);
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    basis(c, k) = 1.0;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(static_cast<Eigen::Index>(i), c);
    ++k;
  }
  return basis;
}

Eigen::MatrixXd tangent_basis(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  if (!psi.stereographic() && wm.chi() != 0) return vertex_pair_basis(m);

  if (!psi.stereographic()) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m.vertex_count() + m.edge_count(), m.dart_count());
    for (int d = 0; d < m.dart_count(); ++d) {
      a(m.vertex_of(d), d) = 1.0;
      a(m.vertex_count() + m.edge_of(d), d) = 1.0;
    }
    return null_space(a);
  }

  const StereoSubspace sub = stereographic_subspace(wm, psi.face);
  const int ns = static_cast<int>(sub.s_star.size());
  std::vector<int> local(m.dart_count(), -1);
  for (int i = 0; i < ns; ++i) local[sub.s_star[i]] = i;
  std::vector<int> vrow(m.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(sub.v_star.size()); ++i) vrow[sub.v_star[i]] = i;
  std::vector<int> erow(m.edge_count(), -1);
  for (int i = 0; i < static_cast<int>(sub.e_star.size()); ++i) erow[sub.e_star[i]] = i;

  const int nv = static_cast<int>(sub.v_star.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nv + static_cast<int>(sub.e_star.size()), ns);
  for (int i = 0; i < ns; ++i) {
    const int d = sub.s_star[i];
    a(vrow[m.vertex_of(d)], i) = 1.0;
    a(nv + erow[m.edge_of(d)], i) = 1.0;
  }
  const Eigen::MatrixXd local_basis = ns > 0 ? null_space(a) : Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(m.dart_count(), local_basis.cols());
  for (int i = 0; i < ns; ++i) u.row(sub.s_star[i]) = local_basis.row(i);
  return u;
}

bool is_edge_antisymmetric(const SurfaceMap& map, const Eigen::MatrixXd& basis) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    for (int e = 0; e < map.edge_count(); ++e) {
      const auto [s, t] = map.edge_darts(e);
      if (std::abs(basis(s, c) + basis(t, c)) > 1e-14) return false;
    }
  return true;
}

Eigen::VectorXd gradient(const WeightedMap& wm, const AngleSystem& psi,
                         const Eigen::MatrixXd& basis) {
  const SurfaceMap& m = wm.map();
  std::vector<int> support;
  for (int d = 0; d < m.dart_count(); ++d)
    if ((basis.row(d).array() != 0.0).any()) support.push_back(d);
  const bool tangential = is_edge_antisymmetric(m, basis);
  const std::vector<double> g = dart_gradient(wm, psi.psi, support, tangential);
  const Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(g.size()));
  return basis.transpose() * gv;
}

Eigen::MatrixXd reduced_hessian(const WeightedMap& wm, const AngleSystem& psi,
                                const Eigen::MatrixXd& basis) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi.psi);
  const bool tangential = is_edge_antisymmetric(m, basis);
  const Eigen::Index k = basis.cols();
  Eigen::MatrixXd hr = Eigen::MatrixXd::Zero(k, k);
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const Eigen::VectorXd diff = basis.row(s).transpose() - basis.row(t).transpose();
    const Eigen::VectorXd sum = basis.row(s).transpose() + basis.row(t).transpose();
    if ((diff.array() != 0.0).any()) {
      const double a = 0.25 * (-1.0 / std::tan(h.psi_hat[s]) - 1.0 / std::tan(h.psi_hat[t]));
      hr.noalias() += a * diff * diff.transpose();
    }
    if (!tangential && (sum.array() != 0.0).any()) {
      const double b = 0.25 * (1.0 / std::tan(h.gamma_hat[e]) + 1.0 / std::tan(h.eta_hat[e]));
      hr.noalias() += b * sum * sum.transpose();
    }
  }
  return hr;
}

ProjectiveQuotient projective_quotient(const WeightedMap& sphere, std::span<const int> involution) {
  const SurfaceMap& m = sphere.map();
  const int n = m.dart_count();
  if (sphere.chi() != 2) throw Error(ErrorCode::NotSphere, "double cover must be a sphere map");
  if (static_cast<int>(involution.size()) != n)
    throw Error(ErrorCode::BadInput, "involution must have one entry per dart");
  for (int d = 0; d < n; ++d) {
    const int g = involution[d];
    if (g < 0 || g >= n) throw Error(ErrorCode::BadInput, "involution entry out of range");
    if (involution[g] != d) throw Error(ErrorCode::NotAutomorphism, "map is not an involution");
  }
  bool reversing = true, preserving = true;
  for (int d = 0; d < n; ++d) {
    const int g = involution[d];
    if (involution[m.opposite(d)] != m.opposite(g)) reversing = preserving = false;
    if (involution[m.next_at_vertex(d)] != m.prev_at_vertex(g)) reversing = false;
    if (involution[m.next_at_vertex(d)] != m.next_at_vertex(g)) preserving = false;
  }
  if (!reversing && !preserving)
    throw Error(ErrorCode::NotAutomorphism, "involution does not commute with the map structure");

  auto vimg = [&](int v) { return m.vertex_of(involution[m.darts_at_vertex(v)[0]]); };
  auto fimg = [&](int f) { return m.face_of(involution[m.darts_of_face(f)[0]]); };
  for (int d = 0; d < n; ++d) {
    if (involution[d] == d) throw Error(ErrorCode::InvolutionNotFree, "involution fixes dart " + std::to_string(d));
    if (involution[d] == m.opposite(d))
      throw Error(ErrorCode::InvolutionNotFree, "involution fixes edge " + std::to_string(m.edge_of(d)));
  }
  for (int v = 0; v < m.vertex_count(); ++v)
    if (vimg(v) == v) throw Error(ErrorCode::InvolutionNotFree, "involution fixes vertex " + std::to_string(v));
  if (reversing) {
    // orientation-reversing maps send faces (orbits of σ∘opp) to orbits of σ⁻¹∘opp
    for (int f = 0; f < m.face_count(); ++f) {
      const int d = m.darts_of_face(f)[0];
      const int img = m.face_of(m.opposite(involution[d]));
      if (img == f) throw Error(ErrorCode::InvolutionNotFree, "involution fixes face " + std::to_string(f));
    }
  } else {
    for (int f = 0; f < m.face_count(); ++f)
      if (fimg(f) == f) throw Error(ErrorCode::InvolutionNotFree, "involution fixes face " + std::to_string(f));
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    const int ge = m.edge_of(involution[m.edge_darts(e)[0]]);
    if (std::abs(sphere.theta(e) - sphere.theta(ge)) > 1e-12)
      throw Error(ErrorCode::BadInput, "weights are not invariant under the involution");
  }

  ProjectiveQuotient q;
  q.dart_class.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (q.dart_class[d] != -1) continue;
    const int c = static_cast<int>(q.representative.size());
    q.representative.push_back(d);
    q.dart_class[d] = q.dart_class[involution[d]] = c;
  }
  const int nq = q.dart_count();
  q.opposite.resize(nq);
  q.edge_of.assign(nq, -1);
  for (int c = 0; c < nq; ++c) q.opposite[c] = q.dart_class[m.opposite(q.representative[c])];
  for (int c = 0; c < nq; ++c) {
    if (q.edge_of[c] != -1) continue;
    q.edge_of[c] = q.edge_of[q.opposite[c]] = q.edge_count();
    q.theta.push_back(sphere.theta_of_dart(q.representative[c]));
  }
  std::vector<char> used(m.vertex_count(), 0);
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (used[v]) continue;
    used[v] = used[vimg(v)] = 1;
    std::vector<int> ds;
    for (int d : m.darts_at_vertex(v)) ds.push_back(q.dart_class[d]);
    q.darts_at_vertex.push_back(std::move(ds));
  }
  q.face_count = m.face_count() / 2;
  return q;
}

ProjectiveReduction reduce_projective(const WeightedMap& sphere, std::span<const int> involution,
                                      const AngleSystem& psi) {
  if (psi.stereographic())
    throw Error(ErrorCode::BadInput, "projective reduction expects a full-mode angle system");
  check_size(sphere, psi.psi);
  ProjectiveReduction r{projective_quotient(sphere, involution), {}};
  r.psi.resize(r.quotient.dart_count());
  for (int c = 0; c < r.quotient.dart_count(); ++c) {
    const int d = r.quotient.representative[c];
    r.psi[c] = 0.5 * (psi.psi[involution[d]] + psi.psi[d]);
  }
  return r;
}

MembershipReport is_member(const ProjectiveQuotient& q, std::span<const double> psi,
                           const MembershipTolerances& tol) {
  MembershipReport r;
  auto flag = [&r](const char* what, int where, double mag) {
    r.member = false;
    r.violations.push_back({what, where, mag});
  };
  if (static_cast<int>(psi.size()) != q.dart_count()) {
    flag("size", -1, 0.0);
    return r;
  }
  for (int v = 0; v < q.vertex_count(); ++v) {
    double sum = 0.0;
    for (int c : q.darts_at_vertex[v]) sum += psi[c];
    if (std::abs(sum - kPi) > tol.equality) flag("C2", v, std::abs(sum - kPi));
  }
  std::vector<char> done(q.edge_count(), 0);
  for (int c = 0; c < q.dart_count(); ++c) {
    const int e = q.edge_of[c];
    const double th = q.theta[e];
    const double eta = 0.5 * (psi[c] + psi[q.opposite[c]] - th);
    const double hat = psi[c] - eta;
    if (hat < tol.interior_margin || hat > th - tol.interior_margin)
      flag("psi_hat", c, std::max(tol.interior_margin - hat, hat - th + tol.interior_margin));
    if (done[e]) continue;
    done[e] = 1;
    if (eta < tol.interior_margin || eta > kPi - th - tol.interior_margin)
      flag("eta_hat", e, std::max(tol.interior_margin - eta, eta - (kPi - th) + tol.interior_margin));
  }
  return r;
}

}  // namespace uniformize
