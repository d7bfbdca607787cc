#pragma once

#include <utility>
#include <vector>

#include "geodubins/sphere.hpp"

namespace geodubins {

// Arc of the circle of spherical radius `radius` about `center`, traversed
// counter-clockwise (orientation +1) or clockwise (-1) about the center.
// Angles are longitudes about the center in the reference meridian basis.
struct OrientedArc {
  Vec3 center;
  double radius = kPi / 2;
  int orientation = 1;
  double start_angle = 0.0;
  double sweep = 0.0;

  double length() const;
  double curvature() const;
  bool is_geodesic(double tol = 1e-12) const;
};

// Position and unit tangent at angular offset s along the arc.
std::pair<Vec3, Vec3> circle_point(const OrientedArc& arc, double s);
Frame arc_frame(const OrientedArc& arc, double s);

// Arc leaving frame f on the side-th tangent circle (side +1 left, -1 right).
// Radius pi/2 with side +1 is the geodesic through f.
OrientedArc arc_from_frame(const Frame& f, int side, double radius, double sweep);
OrientedArc geodesic_from_frame(const Frame& f, double length);

// Exact piecewise-arc curve. The curve parameter t in [0, 1] is proportional
// to arc length.
struct Curve {
  Frame start = Frame::Identity();
  std::vector<OrientedArc> arcs;

  double length() const;
  Frame end_frame() const;
  Frame frame_at_length(double s) const;
  Frame frame_at(double t) const;
  double max_abs_curvature() const;
  // Largest position/tangent jump over the start and all junctions.
  double junction_defect() const;
};

Frame frenet_frame_at(const Curve& c, double t);

// Appends b to a; throws Contract if a's end frame differs from b's start.
Curve concatenate(const Curve& a, const Curve& b, double tol = 1e-9);
// Merges consecutive arcs of the same circle and drops negligible sweeps.
Curve simplify(const Curve& c, double sweep_tol = 1e-13);
// Sub-curve between arc lengths s0 <= s1.
Curve sub_curve(const Curve& c, double s0, double s1);

struct SampledCurve {
  std::vector<double> t;
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;

  std::size_t size() const { return t.size(); }
  double max_step() const;
};

SampledCurve sample_uniform(const Curve& c, std::size_t n);
// Uniform in t with spacing at most `step` in arc length (at least 2 samples).
SampledCurve sample_by_step(const Curve& c, double step);
// Sampled circle of radius r through e1 with tangent e2, turning left.
SampledCurve sample_circle(double r, std::size_t n);

struct CurvatureBounds {
  double kappa_minus = 0.0;
  double kappa_plus = 0.0;
  // Set when the true value lies beyond the probe range (possibly infinite).
  bool minus_saturated = false;
  bool plus_saturated = false;
};

// Probe radii in (0, pi); the grid brackets the tangent-circle radius and
// bisection refines it.
std::vector<double> default_probe_radii(double r_min = 0.02, std::size_t count = 64);
CurvatureBounds curvature_bounds(const SampledCurve& c, double t, const std::vector<double>& probe_radii,
                                 int window = 10);

// n full great-circle turns inserted at parameter t0; end frames unchanged.
Curve add_loops(const Curve& c, double t0, int n);
// Loops spread at t_j = j/n joined by shortest CSC curves of radius rho.
Curve spread_loops(const Curve& c, int n, double rho);

}  // namespace geodubins
