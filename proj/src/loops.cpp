#include <cmath>

#include "geodubins/arcs.hpp"
#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"

namespace geodubins {

Curve add_loops(const Curve& c, double t0, int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "add_loops: n must be positive");
  if (t0 < 0.0 || t0 > 1.0) fail(ErrorKind::InvalidInput, "add_loops: t0 outside [0, 1]");
  const double total = c.length();
  const double s0 = t0 * total;
  Curve head = sub_curve(c, 0.0, s0);
  Curve tail = sub_curve(c, s0, total);
  Curve out;
  out.start = c.start;
  out.arcs = head.arcs;
  out.arcs.push_back(geodesic_from_frame(c.frame_at_length(s0), kTwoPi * n));
  out.arcs.insert(out.arcs.end(), tail.arcs.begin(), tail.arcs.end());
  return out;
}

// Loop sites at t_j = j/n: one turn at each end, two at interior sites. Each
// loop is entered an eighth of a turn ahead of its site along the site's
// geodesic and left an eighth of a turn behind it; consecutive sites are
// joined by shortest CSC curves of radius rho.
Curve spread_loops(const Curve& c, int n, double rho) {
  if (n < 1) fail(ErrorKind::InvalidInput, "spread_loops: n must be positive");
  const double q = kPi / 4;
  const Mat3 ahead = rotation_about_axis(e3(), q);
  Curve out;
  out.start = c.start;
  Frame depart;
  for (int j = 0; j <= n; ++j) {
    const Frame site = c.frame_at(double(j) / n);
    if (j == 0) {
      OrientedArc loop = geodesic_from_frame(site, kTwoPi - q);
      out.arcs.push_back(loop);
      depart = arc_frame(loop, loop.sweep);
      continue;
    }
    const Frame arrive = site * ahead;
    auto link = shortest_csc(depart, arrive, rho);
    if (!link) fail(ErrorKind::Infeasible, "spread_loops: no CSC link between loop sites");
    for (const auto& a : link->curve.arcs) out.arcs.push_back(a);
    const double sweep = j == n ? kTwoPi - q : 2 * kTwoPi - 2 * q;
    OrientedArc loop = geodesic_from_frame(arrive, sweep);
    out.arcs.push_back(loop);
    depart = arc_frame(loop, loop.sweep);
  }
  return out;
}

}  // namespace geodubins
