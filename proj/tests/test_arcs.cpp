#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geodubins/arcs.hpp"
#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "test_util.hpp"

using namespace geodubins;

namespace {

Curve equator(double len) {
  Curve c;
  c.arcs.push_back(geodesic_from_frame(Frame::Identity(), len));
  return c;
}

// Left arc of curvature +k0 followed by a right arc of curvature -k0.
Curve s_junction(double rho, double sweep) {
  Curve c;
  c.arcs.push_back(arc_from_frame(Frame::Identity(), 1, rho, sweep));
  c.arcs.push_back(arc_from_frame(c.end_frame(), -1, rho, sweep));
  return c;
}

}  // namespace

TEST_CASE("circle points") {
  OrientedArc eq = geodesic_from_frame(Frame::Identity(), kPi);
  auto [x, t] = circle_point(eq, kPi / 2);
  CHECK((x - e2()).norm() < 1e-15);
  CHECK((t + e1()).norm() < 1e-15);

  const double rho = 0.3;
  OrientedArc left = arc_from_frame(Frame::Identity(), 1, rho, 1.0);
  CHECK((left.center - Vec3(std::cos(rho), 0, std::sin(rho))).norm() < 1e-15);
  auto [x0, t0] = circle_point(left, 0.0);
  CHECK((x0 - e1()).norm() < 1e-15);
  CHECK((t0 - e2()).norm() < 1e-15);
  CHECK(std::abs(left.curvature() - std::cos(rho) / std::sin(rho)) < 1e-14);
  CHECK(std::abs(left.length() - std::sin(rho)) < 1e-15);
  CHECK_THROWS_AS(circle_point(left, 1.5), Error);
  for (double s = 0; s <= 1.0; s += 0.1) {
    auto [p, tg] = circle_point(left, s);
    CHECK(std::abs(p.dot(tg)) < 1e-14);
    CHECK(std::abs(sphere_distance(p, left.center) - rho) < 1e-14);
  }
  OrientedArc right = arc_from_frame(Frame::Identity(), -1, rho, 1.0);
  CHECK(right.curvature() < 0);
}

TEST_CASE("frenet frames along a geodesic") {
  const double th = 1.3;
  Curve c = equator(th);
  CHECK(frame_distance(frenet_frame_at(c, 0.0), Frame::Identity()) < 1e-15);
  CHECK(frame_distance(frenet_frame_at(c, 1.0), rotation_about_axis(e3(), th)) < 1e-15);
  CHECK(frame_distance(frenet_frame_at(c, 0.5), rotation_about_axis(e3(), th / 2)) < 1e-15);
}

TEST_CASE("junction continuity and length closed form") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const Mat3 Q = testutil::random_rotation(rng);
    const auto sol = shortest_path(Frame::Identity(), Q, 0.3);
    const Curve& c = sol.curve();
    CHECK(c.junction_defect() < 1e-9);
    double closed = 0;
    for (const auto& a : c.arcs) closed += a.sweep * std::sin(a.radius);
    CHECK(std::abs(closed - c.length()) < 1e-15);
    const SampledCurve s = sample_uniform(c, 20001);
    double quad = 0;
    for (std::size_t i = 1; i < s.size(); ++i) quad += sphere_distance(s.points[i - 1], s.points[i]);
    CHECK(std::abs(quad - c.length()) < 1e-6);
    for (std::size_t i = 0; i < s.size(); i += 97) CHECK(std::abs(s.points[i].dot(s.tangents[i])) < 1e-9);
  }
}

TEST_CASE("concatenation") {
  Curve a = equator(0.7);
  Curve b;
  b.start = a.end_frame();
  b.arcs.push_back(geodesic_from_frame(b.start, 0.4));
  const Curve ab = concatenate(a, b);
  CHECK(ab.length() == a.length() + b.length());
  CHECK(frame_distance(ab.end_frame(), rotation_about_axis(e3(), 1.1)) < 1e-14);
  Curve bad = b;
  bad.start = Frame::Identity();
  CHECK_THROWS_AS(concatenate(a, bad), Error);
}

TEST_CASE("curvature bounds of sampled circles") {
  for (double r : {kPi / 6, kPi / 4, kPi / 3}) {
    const SampledCurve s = sample_circle(r, 4000);
    const CurvatureBounds b = curvature_bounds(s, 0.37, default_probe_radii());
    CHECK(std::abs(b.kappa_plus - 1 / std::tan(r)) < 2e-3);
    CHECK(std::abs(b.kappa_minus - 1 / std::tan(r)) < 2e-3);
  }
  SampledCurve g = sample_uniform(equator(kTwoPi), 4000);
  const CurvatureBounds b = curvature_bounds(g, 0.5, default_probe_radii());
  CHECK(std::abs(b.kappa_plus) < 2e-3);
  CHECK(std::abs(b.kappa_minus) < 2e-3);
  CHECK_THROWS_AS(curvature_bounds(sample_circle(kPi / 4, 40), 0.5, default_probe_radii()), Error);
}

TEST_CASE("curvature bounds at a sign-changing junction") {
  const double rho = 0.25, k0 = 1 / std::tan(rho);
  const Curve c = s_junction(rho, 2.0);
  const SampledCurve s = sample_uniform(c, 4001);
  const CurvatureBounds b = curvature_bounds(s, 0.5, default_probe_radii());
  CHECK(std::abs(b.kappa_minus + k0) < 2e-3);
  CHECK(std::abs(b.kappa_plus - k0) < 2e-3);
}

TEST_CASE("loop insertion") {
  std::mt19937_64 rng(8);
  const Mat3 Q = testutil::random_rotation(rng);
  const Curve c = shortest_path(Frame::Identity(), Q, 0.2).curve();
  for (double t0 : {0.0, 0.3, 1.0}) {
    for (int n : {1, 3}) {
      const Curve l = add_loops(c, t0, n);
      CHECK(std::abs(l.length() - c.length() - 2 * n * kPi) < 1e-9);
      CHECK(frame_distance(l.start, c.start) < 1e-9);
      CHECK(frame_distance(l.end_frame(), c.end_frame()) < 1e-9);
      CHECK(l.junction_defect() < 1e-9);
      CHECK(l.max_abs_curvature() <= c.max_abs_curvature() + 1e-12);
    }
  }
  // Loops at the start trace the initial geodesic n times.
  const Curve l0 = add_loops(c, 0.0, 2);
  CHECK(l0.arcs.front().is_geodesic());
  CHECK(std::abs(l0.arcs.front().sweep - 4 * kPi) < 1e-12);
  CHECK(frame_distance(l0.frame_at_length(2 * kPi), c.start) < 1e-12);
}

TEST_CASE("spread loops") {
  const double rho = 0.2;
  const Curve c = equator(2.0);
  const int n = 4;
  const Curve s = spread_loops(c, n, rho);
  CHECK(frame_distance(s.start, c.start) < 1e-9);
  CHECK(frame_distance(s.end_frame(), c.end_frame()) < 1e-8);
  CHECK(s.junction_defect() < 1e-8);
  CHECK(s.max_abs_curvature() <= 1 / std::tan(rho) + 1e-6);
  // Loop sites sit on the original curve at t = j/n.
  int loops = 0;
  for (const auto& a : s.arcs)
    if (a.is_geodesic() && a.sweep > kPi) ++loops;
  CHECK(loops == n + 1);
  const SampledCurve sm = sample_by_step(s, 2e-3);
  for (double t = 0.01; t < 1; t += 0.0731) {
    const CurvatureBounds b = curvature_bounds(sm, t, default_probe_radii());
    CHECK(b.kappa_plus <= 1 / std::tan(rho) + 2e-3);
    CHECK(b.kappa_minus >= -1 / std::tan(rho) - 2e-3);
  }
}
