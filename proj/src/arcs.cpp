#include "geodubins/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geodubins/errors.hpp"

namespace geodubins {

double OrientedArc::length() const { return sweep * std::sin(radius); }

double OrientedArc::curvature() const { return orientation * std::cos(radius) / std::sin(radius); }

bool OrientedArc::is_geodesic(double tol) const { return std::abs(radius - kPi / 2) <= tol; }

std::pair<Vec3, Vec3> circle_point(const OrientedArc& arc, double s) {
  if (!(s >= -1e-12 && s <= arc.sweep + 1e-12)) fail(ErrorKind::InvalidInput, "circle_point: offset outside the arc");
  Vec3 u1 = reference_meridian(arc.center);
  Vec3 u2 = arc.center.cross(u1);
  double phi = arc.start_angle + arc.orientation * s;
  double c = std::cos(phi), sn = std::sin(phi);
  Vec3 pos = std::cos(arc.radius) * arc.center + std::sin(arc.radius) * (c * u1 + sn * u2);
  Vec3 tan = arc.orientation * (-sn * u1 + c * u2);
  return {pos, tan};
}

Frame arc_frame(const OrientedArc& arc, double s) {
  auto [p, t] = circle_point(arc, s);
  return make_frame(p, t);
}

OrientedArc arc_from_frame(const Frame& f, int side, double radius, double sweep) {
  if (!(radius > 0.0 && radius < kPi)) fail(ErrorKind::InvalidInput, "arc radius must lie in (0, pi)");
  if (sweep < 0.0) fail(ErrorKind::InvalidInput, "arc sweep must be non-negative");
  OrientedArc a;
  Vec3 g = f.col(0), n = f.col(2);
  a.center = (std::cos(radius) * g + side * std::sin(radius) * n).normalized();
  a.radius = radius;
  a.orientation = side;
  Vec3 u1 = reference_meridian(a.center);
  Vec3 u2 = a.center.cross(u1);
  Vec3 d = g - a.center.dot(g) * a.center;
  a.start_angle = std::atan2(d.dot(u2), d.dot(u1));
  a.sweep = sweep;
  return a;
}

OrientedArc geodesic_from_frame(const Frame& f, double length) { return arc_from_frame(f, 1, kPi / 2, length); }

double Curve::length() const {
  double s = 0.0;
  for (const auto& a : arcs) s += a.length();
  return s;
}

Frame Curve::end_frame() const {
  if (arcs.empty()) return start;
  return arc_frame(arcs.back(), arcs.back().sweep);
}

Frame Curve::frame_at_length(double s) const {
  if (s <= 0.0 || arcs.empty()) return start;
  double acc = 0.0;
  for (const auto& a : arcs) {
    double l = a.length();
    if (s <= acc + l) return arc_frame(a, std::min(a.sweep, (s - acc) / std::sin(a.radius)));
    acc += l;
  }
  return end_frame();
}

Frame Curve::frame_at(double t) const { return frame_at_length(std::clamp(t, 0.0, 1.0) * length()); }

double Curve::max_abs_curvature() const {
  double k = 0.0;
  for (const auto& a : arcs)
    if (a.sweep > 0) k = std::max(k, std::abs(a.curvature()));
  return k;
}

double Curve::junction_defect() const {
  if (arcs.empty()) return 0.0;
  double d = frame_distance(start, arc_frame(arcs.front(), 0.0));
  for (std::size_t i = 1; i < arcs.size(); ++i)
    d = std::max(d, frame_distance(arc_frame(arcs[i - 1], arcs[i - 1].sweep), arc_frame(arcs[i], 0.0)));
  return d;
}

Frame frenet_frame_at(const Curve& c, double t) { return c.frame_at(t); }

Curve concatenate(const Curve& a, const Curve& b, double tol) {
  double dev = frame_distance(a.end_frame(), b.start);
  if (dev > tol) {
    std::ostringstream os;
    os << "concatenate: frame mismatch, max deviation " << dev;
    fail(ErrorKind::Contract, os.str());
  }
  Curve out = a;
  out.arcs.insert(out.arcs.end(), b.arcs.begin(), b.arcs.end());
  return out;
}

static bool same_circle(const OrientedArc& a, const OrientedArc& b) {
  return a.orientation == b.orientation && std::abs(a.radius - b.radius) < 1e-12 &&
         (a.center - b.center).norm() < 1e-12;
}

Curve simplify(const Curve& c, double sweep_tol) {
  Curve out;
  out.start = c.start;
  for (const auto& a : c.arcs) {
    if (a.sweep <= sweep_tol) continue;
    if (!out.arcs.empty() && same_circle(out.arcs.back(), a)) {
      out.arcs.back().sweep += a.sweep;
      continue;
    }
    out.arcs.push_back(a);
  }
  return out;
}

Curve sub_curve(const Curve& c, double s0, double s1) {
  Curve out;
  out.start = c.frame_at_length(s0);
  double acc = 0.0;
  for (const auto& a : c.arcs) {
    double l = a.length();
    double lo = std::max(s0, acc), hi = std::min(s1, acc + l);
    if (hi > lo) {
      double sr = std::sin(a.radius);
      double from = (lo - acc) / sr, to = (hi - acc) / sr;
      OrientedArc piece = a;
      piece.start_angle = a.start_angle + a.orientation * from;
      piece.sweep = std::min(a.sweep, to) - from;
      if (piece.sweep > 0) out.arcs.push_back(piece);
    }
    acc += l;
    if (acc >= s1) break;
  }
  return out;
}

double SampledCurve::max_step() const {
  double m = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) m = std::max(m, sphere_distance(points[i - 1], points[i]));
  return m;
}

// Samples at increasing arc lengths with a single pass over the arcs.
static SampledCurve sample_at(const Curve& c, const std::vector<double>& ts) {
  SampledCurve out;
  double total = c.length();
  out.t = ts;
  out.points.reserve(ts.size());
  out.tangents.reserve(ts.size());
  std::size_t k = 0;
  double acc = 0.0;
  for (double t : ts) {
    double s = t * total;
    while (k < c.arcs.size() && s > acc + c.arcs[k].length() && k + 1 < c.arcs.size()) {
      acc += c.arcs[k].length();
      ++k;
    }
    Frame f;
    if (c.arcs.empty() || total == 0.0) {
      f = c.start;
    } else {
      const auto& a = c.arcs[k];
      double ang = std::clamp((s - acc) / std::sin(a.radius), 0.0, a.sweep);
      f = arc_frame(a, ang);
    }
    out.points.push_back(f.col(0));
    out.tangents.push_back(f.col(1));
  }
  return out;
}

SampledCurve sample_uniform(const Curve& c, std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "sample_uniform needs at least two samples");
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = double(i) / double(n - 1);
  ts.back() = 1.0;
  return sample_at(c, ts);
}

SampledCurve sample_by_step(const Curve& c, double step) {
  std::size_t n = std::max<std::size_t>(2, std::size_t(std::ceil(c.length() / step)) + 1);
  return sample_uniform(c, n);
}

SampledCurve sample_circle(double r, std::size_t n) {
  Curve c;
  c.arcs.push_back(arc_from_frame(Frame::Identity(), 1, r, kTwoPi));
  return sample_uniform(c, n);
}

}  // namespace geodubins
