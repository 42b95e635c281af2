#include "uniformize/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "uniformize/error.hpp"
#include "uniformize/lobachevsky.hpp"

namespace uniformize {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int sign_of(int x) { return (x > 0) - (x < 0); }

Mobius rotation(double phi) {
  const Complex h = std::polar(1.0, phi / 2);
  return {h, 0.0, 0.0, std::conj(h)};
}

Mobius translation(double dist, int curvature) {
  if (curvature < 0) {
    const double ch = std::cosh(dist / 2), sh = std::sinh(dist / 2);
    return {ch, sh, sh, ch};
  }
  return {1.0, dist, 0.0, 1.0};
}

Mobius normalized(Mobius m) {
  const Complex det = m.a * m.d - m.b * m.c;
  const Complex s = std::sqrt(det);
  return {m.a / s, m.b / s, m.c / s, m.d / s};
}

double distance(int curvature, Complex p, Complex q) {
  if (curvature < 0) {
    const double r = std::abs(p - q) / std::abs(1.0 - std::conj(p) * q);
    return 2.0 * std::atanh(std::min(r, 1.0 - 1e-16));
  }
  return std::abs(p - q);
}

// Cosine of the angle between sides x and y of a triangle whose third side is z.
double corner_cos(int curvature, double x, double y, double z) {
  if (curvature < 0)
    return (std::cosh(x) * std::cosh(y) - std::cosh(z)) / (std::sinh(x) * std::sinh(y));
  return (x * x + y * y - z * z) / (2.0 * x * y);
}

double safe_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Unit direction of a Euclidean frame.
Complex frame_direction(const Mobius& m) {
  const Complex v = m.a / m.d;
  return v / std::abs(v);
}

std::vector<char> relevant_darts(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  if (!psi.stereographic()) return std::vector<char>(m.dart_count(), 1);
  return stereographic_subspace(wm, psi.face).in_s_star;
}

}  // namespace

const char* to_string(Chart c) {
  switch (c) {
    case Chart::poincare: return "poincare";
    case Chart::plane: return "plane";
    case Chart::stereographic: break;
  }
  return "stereo";
}

TriangleShape triangle_legs(double alpha, double beta, double gamma, int curvature) {
  TriangleShape t{alpha, beta, gamma, curvature, 0.0, 0.0, 0.0};
  const double eta = 0.5 * (alpha + beta + gamma - kPi);
  const double ah = alpha - eta, bh = beta - eta, gh = gamma - eta;
  auto degenerate = [&](const char* why) {
    return Error(ErrorCode::DegenerateTriangle,
                 fmt::format("angles ({}, {}, {}) curvature {}: {}", alpha, beta, gamma, curvature, why));
  };
  for (double h : {ah, bh, gh})
    if (!(h > 0.0 && h < kPi)) throw degenerate("hat angle outside (0, pi)");

  if (curvature == 0) {
    if (std::abs(eta) > 1e-9) throw degenerate("angle sum differs from pi");
    t.a = std::sin(alpha);
    t.b = std::sin(beta);
    t.c = std::sin(gamma);
    return t;
  }
  if (curvature < 0 ? !(eta < 0.0) : !(eta > 0.0)) throw degenerate("angle excess has the wrong sign");
  const double se = std::sin(std::abs(eta));
  const double sa = std::sin(ah), sb = std::sin(bh), sg = std::sin(gh);
  auto side = [&](double x, double y, double z) {
    const double q = std::sqrt(se * x / (y * z));
    if (curvature < 0) {
      if (!(q < 1.0)) throw degenerate("side length is infinite");
      return 2.0 * std::atanh(q);
    }
    return 2.0 * std::atan(q);
  };
  t.a = side(sa, sb, sg);
  t.b = side(sb, sg, sa);
  t.c = side(sg, sa, sb);
  return t;
}

EdgeGeometry edge_geometry(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  EdgeGeometry g;
  g.curvature = psi.stereographic() ? 0 : sign_of(wm.chi());
  g.leg.assign(m.dart_count(), kNaN);
  g.center_distance.assign(m.edge_count(), kNaN);
  g.defined.assign(m.edge_count(), 0);
  const std::vector<char> rel = relevant_darts(wm, psi);

  if (g.curvature != 0) {
    for (int e = 0; e < m.edge_count(); ++e) {
      const auto [s, t] = m.edge_darts(e);
      const TriangleShape tri = triangle_legs(psi.psi[s], psi.psi[t], kPi - wm.theta(e), g.curvature);
      g.leg[s] = tri.a;
      g.leg[t] = tri.b;
      g.center_distance[e] = tri.c;
      g.defined[e] = 1;
    }
    return g;
  }

  // Euclidean triangles are known up to scale; carry the scale through shared radii.
  std::vector<double> radius(m.vertex_count(), kNaN);
  auto set_edge = [&](int s, double k) {
    const int e = m.edge_of(s), t = m.opposite(s);
    g.leg[s] = k * std::sin(psi.psi[s]);
    g.leg[t] = k * std::sin(psi.psi[t]);
    g.center_distance[e] = k * std::sin(wm.theta(e));
    g.defined[e] = 1;
  };
  for (int d0 = 0; d0 < m.dart_count(); ++d0) {
    if (!rel[d0] || g.defined[m.edge_of(d0)]) continue;
    set_edge(d0, 1.0 / std::sin(psi.psi[d0]));
    std::deque<int> queue;
    for (int s : {d0, m.opposite(d0)}) {
      const int w = m.head_of(s);
      if (std::isnan(radius[w])) {
        radius[w] = g.leg[s];
        queue.push_back(w);
      }
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int s : m.darts_at_vertex(v)) {
        if (!rel[s]) continue;
        if (!g.defined[m.edge_of(s)]) set_edge(s, radius[v] / std::sin(psi.psi[m.opposite(s)]));
        const int w = m.head_of(s);
        if (std::isnan(radius[w])) {
          radius[w] = g.leg[s];
          queue.push_back(w);
        }
      }
    }
  }
  return g;
}

std::vector<double> leg_spread(const WeightedMap& wm, const EdgeGeometry& geo) {
  const SurfaceMap& m = wm.map();
  std::vector<double> spread(m.vertex_count(), 0.0);
  for (int v = 0; v < m.vertex_count(); ++v) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int s : m.darts_at_vertex(v)) {
      if (!geo.defined[m.edge_of(s)]) continue;
      const double r = geo.leg[m.opposite(s)];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi > 0.0) spread[v] = (hi - lo) / hi;
  }
  return spread;
}

std::vector<double> glue_ratios(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi.psi);
  std::vector<double> r(m.dart_count());
  for (int s = 0; s < m.dart_count(); ++s) {
    const int e = m.edge_of(s);
    r[s] = std::sin(std::abs(h.eta_hat[e])) * std::sin(h.psi_hat[m.opposite(s)]) /
           (std::sin(h.psi_hat[s]) * std::sin(h.gamma_hat[e]));
  }
  return r;
}

DiskConfiguration layout(const WeightedMap& wm, const AngleSystem& psi, const LayoutOptions& opts) {
  const SurfaceMap& m = wm.map();
  DiskConfiguration cfg;
  StereoSubspace sub;
  const bool stereo = psi.stereographic();
  if (stereo) {
    sub = stereographic_subspace(wm, psi.face);
    cfg.chart = Chart::stereographic;
    cfg.curvature = 0;
  } else if (wm.chi() == 0) {
    cfg.chart = Chart::plane;
    cfg.curvature = 0;
  } else if (wm.chi() < 0) {
    cfg.chart = Chart::poincare;
    cfg.curvature = -1;
  } else {
    throw Error(ErrorCode::LayoutUnsupported, "sphere patterns are laid out from a stereographic system");
  }
  const int k = cfg.curvature;

  EdgeGeometry geo = edge_geometry(wm, psi);
  const std::vector<double> spread = leg_spread(wm, geo);
  const double worst = *std::max_element(spread.begin(), spread.end());
  if (worst > opts.spread_tol)
    throw Error(ErrorCode::NotCritical, fmt::format("leg spread {:.3e} exceeds {:.3e}", worst, opts.spread_tol));

  std::vector<char> vertex_active(m.vertex_count(), stereo ? 0 : 1);
  if (stereo)
    for (int v : sub.v_star) vertex_active[v] = 1;

  if (k == 0) {
    int first = -1;
    for (int e = 0; e < m.edge_count() && first < 0; ++e)
      if (geo.defined[e]) first = e;
    if (first >= 0) {
      const double f = 1.0 / geo.center_distance[first];
      for (double& x : geo.leg) x *= f;
      for (double& x : geo.center_distance) x *= f;
    }
  }
  cfg.leg = geo.leg;
  cfg.psi = psi.psi;
  cfg.center_distance = geo.center_distance;

  cfg.disks.assign(m.vertex_count(), Disk{});
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (!vertex_active[v]) continue;
    cfg.disks[v].radius = 1.0;
    for (int s : m.darts_at_vertex(v)) {
      if (geo.defined[m.edge_of(s)]) {
        cfg.disks[v].radius = geo.leg[m.opposite(s)];
        break;
      }
    }
  }

  int root = opts.root_dart;
  if (root < 0) {
    for (int d = 0; d < m.dart_count() && root < 0; ++d)
      if (vertex_active[m.vertex_of(d)] && (geo.defined[m.edge_of(d)] || !stereo || sub.s_star.empty()))
        root = d;
  }
  if (root < 0 || root >= m.dart_count() || !vertex_active[m.vertex_of(root)])
    throw Error(ErrorCode::LayoutUnsupported, "no admissible root dart");
  cfg.root_dart = root;

  cfg.frames.assign(m.dart_count(), Mobius{});
  cfg.dart_placed.assign(m.dart_count(), 0);
  cfg.parent_dart.assign(m.vertex_count(), -1);

  auto place_vertex = [&](int entry, const Mobius& frame) {
    // frames of all darts at the vertex, rotating counterclockwise from `entry`
    Mobius f = frame;
    int s = entry;
    do {
      cfg.frames[s] = f;
      cfg.dart_placed[s] = 1;
      const int nx = m.next_at_vertex(s);
      f = normalized(f * rotation(psi.psi[s] + psi.psi[nx]));
      s = nx;
    } while (s != entry);
    const int v = m.vertex_of(entry);
    cfg.disks[v].placed = true;
    cfg.disks[v].center = frame(Complex(0.0));
  };

  std::deque<int> queue;
  place_vertex(root, Mobius{});
  queue.push_back(m.vertex_of(root));
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int s : m.darts_at_vertex(v)) {
      const int e = m.edge_of(s);
      if (!geo.defined[e]) continue;
      const int w = m.head_of(s);
      if (cfg.disks[w].placed) continue;
      const Mobius back = normalized(cfg.frames[s] * translation(geo.center_distance[e], k) * rotation(kPi));
      place_vertex(m.opposite(s), back);
      cfg.parent_dart[w] = s;
      queue.push_back(w);
    }
  }
  for (int v = 0; v < m.vertex_count(); ++v)
    if (vertex_active[v] && !cfg.disks[v].placed)
      throw Error(ErrorCode::LayoutUnsupported, "vertex " + std::to_string(v) + " is not reachable");

  cfg.face_points.assign(m.face_count(), Complex(0.0));
  cfg.face_placed.assign(m.face_count(), 0);
  for (int f = 0; f < m.face_count(); ++f) {
    if (stereo && f == sub.face) continue;
    for (int s : m.darts_of_face(f)) {
      if (!cfg.dart_placed[s]) continue;
      const double rho = cfg.disks[m.vertex_of(s)].radius;
      cfg.face_points[f] = (cfg.frames[s] * rotation(-psi.psi[s]) * translation(rho, k))(Complex(0.0));
      cfg.face_placed[f] = 1;
      break;
    }
  }

  if (stereo) {
    for (int u = 0; u < m.vertex_count(); ++u) {
      if (!sub.on_face[u]) continue;
      Disk& disk = cfg.disks[u];
      for (int s : m.darts_at_vertex(u)) {
        const int t = m.opposite(s);
        if (sub.on_face[m.vertex_of(t)]) continue;
        const Complex n = frame_direction(cfg.frames[t]);
        const Complex c = cfg.disks[m.vertex_of(t)].center;
        disk.line = true;
        disk.placed = true;
        disk.normal = n;
        disk.offset = dot(n, c) + cfg.disks[m.vertex_of(t)].radius * std::cos(wm.theta(m.edge_of(s)));
        break;
      }
      if (!disk.line)
        throw Error(ErrorCode::LayoutUnsupported, "vertex " + std::to_string(u) + " of the face has no spoke");
    }
    for (int f = 0; f < m.face_count(); ++f) {
      if (f == sub.face || cfg.face_placed[f]) continue;
      const auto& ds = m.darts_of_face(f);
      const Disk& l1 = cfg.disks[m.vertex_of(ds[0])];
      const Disk& l2 = cfg.disks[m.vertex_of(ds[1])];
      const double det = l1.normal.real() * l2.normal.imag() - l1.normal.imag() * l2.normal.real();
      if (std::abs(det) < 1e-12) throw Error(ErrorCode::LayoutUnsupported, "parallel boundary lines");
      const double x = (l1.offset * l2.normal.imag() - l2.offset * l1.normal.imag()) / det;
      const double y = (l1.normal.real() * l2.offset - l2.normal.real() * l1.offset) / det;
      cfg.face_points[f] = {x, y};
      cfg.face_placed[f] = 1;
    }
    // every boundary line has to pass through the face points around its vertex
    for (int u = 0; u < m.vertex_count(); ++u) {
      if (!sub.on_face[u]) continue;
      const Disk& disk = cfg.disks[u];
      for (int s : m.darts_at_vertex(u)) {
        const int f = m.face_of(s);
        if (f == sub.face || !cfg.face_placed[f]) continue;
        const Complex p = cfg.face_points[f];
        if (std::abs(dot(disk.normal, p) - disk.offset) > 1e-6 * (1.0 + std::abs(p)))
          throw Error(ErrorCode::LayoutUnsupported,
                      "face points around vertex " + std::to_string(u) + " are not collinear");
      }
    }
  }

  if (cfg.chart == Chart::plane) {
    for (int s = 0; s < m.dart_count(); ++s) {
      const int e = m.edge_of(s);
      const int w = m.head_of(s);
      const Complex dev = (cfg.frames[s] * translation(geo.center_distance[e], k))(Complex(0.0));
      const Complex t = dev - cfg.disks[w].center;
      if (std::abs(t) < 1e-9) continue;
      bool seen = false;
      for (Complex u : cfg.translations) seen = seen || std::abs(u - t) < 1e-7 || std::abs(u + t) < 1e-7;
      if (!seen) cfg.translations.push_back(t);
    }
  }
  return cfg;
}

double chart_distance(const DiskConfiguration& config, Complex p, Complex q) {
  return distance(config.curvature, p, q);
}

ConfigurationResiduals check_configuration(const DiskConfiguration& cfg, const WeightedMap& wm) {
  const SurfaceMap& m = wm.map();
  const int k = cfg.curvature;
  ConfigurationResiduals r;
  r.edge_angle.assign(m.edge_count(), kNaN);
  r.face_concurrency.assign(m.face_count(), 0.0);
  r.vertex_angle_sum.assign(m.vertex_count(), 0.0);
  const bool stereo = cfg.chart == Chart::stereographic;

  auto realized = [&](int s, Complex& head) {
    head = (cfg.frames[s] * translation(cfg.center_distance[m.edge_of(s)], k))(Complex(0.0));
  };

  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const Disk& dv = cfg.disks[m.vertex_of(s)];
    const Disk& dw = cfg.disks[m.vertex_of(t)];
    if (!dv.placed || !dw.placed) continue;
    double theta_real = kNaN;
    if (dv.line && dw.line) {
      theta_real = safe_acos(-dot(dv.normal, dw.normal));
    } else if (dv.line || dw.line) {
      const Disk& line = dv.line ? dv : dw;
      const Disk& circ = dv.line ? dw : dv;
      theta_real = safe_acos((line.offset - dot(line.normal, circ.center)) / circ.radius);
    } else {
      const int base = cfg.dart_placed[s] ? s : t;
      Complex head;
      realized(base, head);
      const Complex tail = cfg.frames[base](Complex(0.0));
      const double d = distance(k, tail, head);
      theta_real = kPi - safe_acos(corner_cos(k, dv.radius, dw.radius, d));

      // both triangles of the quadrangle: corner angles at the two centers
      const double av = safe_acos(corner_cos(k, dv.radius, d, dw.radius));
      const double aw = safe_acos(corner_cos(k, dw.radius, d, dv.radius));
      r.vertex_angle_sum[m.vertex_of(s)] += 2.0 * av;
      r.vertex_angle_sum[m.vertex_of(t)] += 2.0 * aw;
      const double af = kPi - theta_real;
      if (k < 0) {
        r.quad_area_sum += 2.0 * (kPi - av - aw - af);
      } else {
        r.quad_area_sum += dv.radius * d * std::sin(av);
      }
    }
    r.edge_angle[e] = std::abs(theta_real - wm.theta(e));
    r.max_angle = std::max(r.max_angle, r.edge_angle[e]);
  }

  for (int f = 0; f < m.face_count(); ++f) {
    if (!cfg.face_placed[f]) continue;
    const Complex p = cfg.face_points[f];
    double worst = 0.0;
    const auto& ds = m.darts_of_face(f);
    if (stereo) {
      for (int s : ds) {
        const Disk& disk = cfg.disks[m.vertex_of(s)];
        const double defect = disk.line ? std::abs(dot(disk.normal, p) - disk.offset)
                                        : std::abs(distance(k, p, disk.center) - disk.radius);
        worst = std::max(worst, defect);
      }
    } else {
      int s0 = -1;
      for (int s : ds)
        if (cfg.dart_placed[s]) {
          s0 = s;
          break;
        }
      // develop the boundary of f in the copy that holds its face point
      Mobius frame = cfg.frames[s0];
      int s = s0;
      do {
        const Disk& disk = cfg.disks[m.vertex_of(s)];
        worst = std::max(worst, std::abs(distance(k, p, frame(Complex(0.0))) - disk.radius));
        const int t = m.opposite(s);
        const int nx = m.next_at_vertex(t);
        frame = normalized(frame * translation(cfg.center_distance[m.edge_of(s)], k) *
                           rotation(kPi + cfg.psi[t] + cfg.psi[nx]));
        s = nx;
      } while (s != s0);
    }
    r.face_concurrency[f] = worst;
    r.max_concurrency = std::max(r.max_concurrency, worst);
  }
  return r;
}

double volume_functional(const WeightedMap& wm, const AngleSystem& psi) {
  return functional_value(wm, psi);
}

OrthoschemeVolume volume_orthoschemes(const WeightedMap& wm, const AngleSystem& psi) {
  const SurfaceMap& m = wm.map();
  const HatData h = hat_data(wm, psi.psi);
  OrthoschemeVolume v;
  v.edge_sum.resize(m.edge_count());
  v.edge_reference.resize(m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto [s, t] = m.edge_darts(e);
    const double gamma = kPi - wm.theta(e);
    const double a = psi.psi[s], b = psi.psi[t];
    v.edge_sum[e] = 2.0 * ortho_v(a, omega(gamma, a, b)) + 2.0 * ortho_v(b, omega(gamma, b, a));
    v.edge_reference[e] = i_plus(wm.theta(e), h.psi_hat[s]) - i_minus(wm.theta(e), h.eta_hat[e]);
    v.total += v.edge_sum[e];
  }
  return v;
}

}  // namespace uniformize
