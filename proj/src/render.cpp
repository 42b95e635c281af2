#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "uniformize/error.hpp"
#include "uniformize/geometry.hpp"

namespace uniformize {

namespace {

std::string num(double x) { return fmt::format("{:.9f}", std::abs(x) < 5e-10 ? 0.0 : x); }

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

struct Box {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  void add(Complex p, double r = 0.0) {
    x0 = std::min(x0, p.real() - r);
    y0 = std::min(y0, p.imag() - r);
    x1 = std::max(x1, p.real() + r);
    y1 = std::max(y1, p.imag() + r);
  }
  bool empty() const { return x0 > x1; }
};

// Euclidean circle of a hyperbolic disk in the Poincaré chart.
void poincare_circle(Complex center, double radius, Complex& euclid_center, double& euclid_radius) {
  const double d0 = 2.0 * std::atanh(std::abs(center));
  const Complex u = std::abs(center) > 0.0 ? center / std::abs(center) : Complex(1.0);
  const double x1 = std::tanh((d0 - radius) / 2), x2 = std::tanh((d0 + radius) / 2);
  euclid_center = u * ((x1 + x2) / 2);
  euclid_radius = (x2 - x1) / 2;
}

// SVG path segment along the geodesic from p to q (the pen is at p).
std::string geodesic_to(Complex p, Complex q, bool hyperbolic) {
  if (!hyperbolic || std::abs(cross(p, q)) < 1e-12 || std::abs(p) < 1e-12)
    return fmt::format(" L {} {}", num(q.real()), num(q.imag()));
  // the geodesic lies on the circle through p, q and the inverse of p
  const Complex r = p / std::norm(p);
  const double ax = p.real(), ay = p.imag(), bx = q.real(), by = q.imag(), cx = r.real(), cy = r.imag();
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double ux = (std::norm(p) * (by - cy) + std::norm(q) * (cy - ay) + std::norm(r) * (ay - by)) / d;
  const double uy = (std::norm(p) * (cx - bx) + std::norm(q) * (ax - cx) + std::norm(r) * (bx - ax)) / d;
  const Complex c(ux, uy);
  const double rad = std::abs(p - c);
  const int sweep = cross(p - c, q - c) > 0.0 ? 1 : 0;
  return fmt::format(" A {} {} 0 0 {} {} {}", num(rad), num(rad), sweep, num(q.real()), num(q.imag()));
}

Mobius rot(double phi) {
  const Complex h = std::polar(1.0, phi / 2);
  return {h, 0.0, 0.0, std::conj(h)};
}

Mobius shift(double dist, int curvature) {
  if (curvature < 0) {
    const double ch = std::cosh(dist / 2), sh = std::sinh(dist / 2);
    return {ch, sh, sh, ch};
  }
  return {1.0, dist, 0.0, 1.0};
}

}  // namespace

std::string svg_string(const DiskConfiguration& cfg, const WeightedMap& wm, const RenderOptions& opts) {
  const SurfaceMap& m = wm.map();
  const bool hyperbolic = cfg.chart == Chart::poincare;
  const int k = cfg.curvature;

  std::vector<Complex> offsets{Complex(0.0)};
  if (cfg.chart == Chart::plane && opts.copies > 0 && cfg.translations.size() >= 2) {
    std::vector<Complex> ts = cfg.translations;
    std::stable_sort(ts.begin(), ts.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b) - 1e-12; });
    const Complex t1 = ts[0];
    Complex t2 = t1;
    for (Complex t : ts)
      if (std::abs(cross(t1, t)) > 1e-9 * std::abs(t1) * std::abs(t)) {
        t2 = t;
        break;
      }
    if (t2 != t1) {
      offsets.clear();
      for (int i = -opts.copies; i <= opts.copies; ++i)
        for (int j = -opts.copies; j <= opts.copies; ++j) offsets.push_back(double(i) * t1 + double(j) * t2);
      std::stable_sort(offsets.begin(), offsets.end(),
                       [](Complex a, Complex b) { return std::abs(a) < std::abs(b) - 1e-12; });
    }
  }

  struct Circle {
    Complex c;
    double r;
  };
  std::vector<Circle> circles;
  for (Complex off : offsets)
    for (const Disk& d : cfg.disks) {
      if (!d.placed || d.line) continue;
      if (hyperbolic) {
        Circle c{};
        poincare_circle(d.center, d.radius, c.c, c.r);
        circles.push_back(c);
      } else {
        circles.push_back({d.center + off, d.radius});
      }
    }
  std::vector<Complex> points;
  for (Complex off : offsets)
    for (int f = 0; f < m.face_count(); ++f)
      if (cfg.face_placed[f]) points.push_back(cfg.face_points[f] + (hyperbolic ? Complex(0.0) : off));

  Box box;
  if (hyperbolic) {
    box.add(Complex(0.0), 1.0);
  } else {
    for (const Circle& c : circles) box.add(c.c, c.r);
    for (Complex p : points) box.add(p);
    if (box.empty()) box.add(Complex(0.0), 1.0);
  }
  const double pad = 0.05 * std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-6});
  const double x0 = box.x0 - pad, y0 = box.y0 - pad;
  const double w = box.x1 - box.x0 + 2 * pad, h = box.y1 - box.y0 + 2 * pad;
  const double stroke = 0.002 * std::max(w, h);
  const double mark = 2.5 * stroke;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  // y grows upward in the chart, so the content group is mirrored
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
      "viewBox=\"{} {} {} {}\">\n",
      num(x0), num(-(y0 + h)), num(w), num(h));
  out += fmt::format(
      "<style>circle,line,path{{fill:none;stroke-width:{}}} .disk{{stroke:#1f4e9a}} "
      ".boundary{{stroke:#000}} .line{{stroke:#1f4e9a}} .quad{{stroke:#b04020}} .face{{fill:#b04020}}</style>\n",
      num(stroke));
  out += "<g transform=\"scale(1,-1)\">\n";
  if (hyperbolic) out += "<circle class=\"boundary\" cx=\"0.000000000\" cy=\"0.000000000\" r=\"1.000000000\"/>\n";
  for (const Circle& c : circles)
    out += fmt::format("<circle class=\"disk\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(c.c.real()), num(c.c.imag()),
                       num(c.r));
  for (const Disk& d : cfg.disks) {
    if (!d.line) continue;
    const Complex p0 = d.normal * d.offset;
    const Complex t = Complex(0.0, 1.0) * d.normal;
    const double len = 4.0 * std::max(w, h) + std::abs(p0);
    const Complex a = p0 - len * t, b = p0 + len * t;
    out += fmt::format("<line class=\"line\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(a.real()),
                       num(a.imag()), num(b.real()), num(b.imag()));
  }
  if (opts.overlay_quads) {
    for (int e = 0; e < m.edge_count(); ++e) {
      int s = m.edge_darts(e)[0];
      if (!cfg.dart_placed[s]) s = m.opposite(s);
      if (!cfg.dart_placed[s] || std::isnan(cfg.center_distance[e])) continue;
      const Disk& dv = cfg.disks[m.vertex_of(s)];
      const Mobius& f = cfg.frames[s];
      const Complex p = f(Complex(0.0));
      const Complex a = (f * rot(-cfg.psi[s]) * shift(dv.radius, k))(Complex(0.0));
      const Complex q = (f * shift(cfg.center_distance[e], k))(Complex(0.0));
      const Complex b = (f * rot(cfg.psi[s]) * shift(dv.radius, k))(Complex(0.0));
      std::string d = fmt::format("M {} {}", num(p.real()), num(p.imag()));
      d += geodesic_to(p, a, hyperbolic);
      d += geodesic_to(a, q, hyperbolic);
      d += geodesic_to(q, b, hyperbolic);
      d += geodesic_to(b, p, hyperbolic);
      out += fmt::format("<path class=\"quad\" d=\"{} Z\"/>\n", d);
    }
  }
  for (Complex p : points)
    out += fmt::format("<rect class=\"face\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n",
                       num(p.real() - mark / 2), num(p.imag() - mark / 2), num(mark), num(mark));
  out += "</g>\n</svg>\n";
  return out;
}

void render_svg(const DiskConfiguration& cfg, const WeightedMap& wm, const std::string& path,
                const RenderOptions& opts) {
  const std::string svg = svg_string(cfg, wm, opts);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  os << svg;
  if (!os) throw Error(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace uniformize
