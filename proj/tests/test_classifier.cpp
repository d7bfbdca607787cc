#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geodubins/classifier.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/index.hpp"
#include "test_util.hpp"

using namespace geodubins;

namespace {

Curve equator(double theta) {
  Curve c;
  c.arcs.push_back(geodesic_from_frame(Frame::Identity(), theta));
  return c;
}

// Brute-force maximin over a latitude/longitude grid, no constraints.
double grid_maximin(const SampledCurve& s, int steps) {
  double best = -2.0;
  for (int i = 0; i <= steps; ++i) {
    const double th = kPi * i / steps;
    for (int j = 0; j < 2 * steps; ++j) {
      const double ph = kPi * j / steps;
      const Vec3 v(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      double m = 2.0;
      for (const auto& t : s.tangents) m = std::min(m, t.dot(v));
      best = std::max(best, m);
    }
  }
  return best;
}

Curve critical(int k, int sign, double rho0) {
  CriticalSpec spec;
  spec.rho0 = rho0;
  spec.radii.assign(k + 1, 1.1 * rho0);
  spec.leading_sign = sign;
  return generate_critical(spec);
}

}  // namespace

TEST_CASE("axis of an equator geodesic is the tangent bisector") {
  const double rho0 = 0.2;
  for (double theta : {0.5, 1.0, 2.0, 2.8}) {
    const Mat3 Q = rotation_about_axis(e3(), theta);
    const SampledCurve s = sample_uniform(equator(theta), 801);
    const AxisResult a = hemispheric_axis(s, endpoint_centers(Q, rho0));
    const Vec3 expect(-std::sin(theta / 2), std::cos(theta / 2), 0);
    CHECK((a.v - expect).norm() < 1e-6);
    CHECK(std::abs(a.m - std::cos(theta / 2)) < 1e-9);
    CHECK(a.hemispheric);
    CHECK_FALSE(a.degenerate);
    // The grid oracle cannot beat the computed optimum.
    CHECK(grid_maximin(s, 90) <= a.m + 1e-12);
    CHECK(grid_maximin(s, 90) > a.m - 0.03);
  }
}

TEST_CASE("axis of a single short arc") {
  const OrientedArc arc = arc_from_frame(Frame::Identity(), 1, 0.5, 0.6);
  Curve c;
  c.arcs.push_back(arc);
  const SampledCurve s = sample_uniform(c, 801);
  const AxisResult a = hemispheric_axis(s, endpoint_centers(c.end_frame(), 0.2));
  const Vec3 bisector = arc_frame(arc, 0.3).col(1);
  CHECK((a.v - bisector).norm() < 1e-3);
}

TEST_CASE("half great circle is degenerate") {
  // Tangents cover a closed half circle; the maximin is 0, attained at -e1
  // among other directions.
  const SampledCurve s = sample_uniform(equator(kPi), 2001);
  const AxisResult a = hemispheric_axis(s, endpoint_centers(rotation_about_axis(e3(), kPi), 0.2));
  CHECK(a.degenerate);
  CHECK(std::abs(a.m) < 1e-6);
  CHECK(a.v.dot(-e1()) > 0.99);
}

TEST_CASE("serial and parallel axis agree exactly") {
  const Curve c = critical(3, 1, 0.2);
  const SampledCurve s = sample_uniform(c, 2001);
  const EndpointCenters ctr = endpoint_centers(c.end_frame(), 0.2);
  const AxisResult a = hemispheric_axis(s, ctr), b = hemispheric_axis_serial(s, ctr);
  CHECK(a.v == b.v);
  CHECK(a.m == b.m);
}

TEST_CASE("tight geodesic has an all-zero sequence") {
  const Mat3 Q = rotation_about_axis(e3(), 2.0);
  const ExtractionResult e = classify_curve(equator(2.0), Q, 0.2, 0.2 / 16);
  CHECK(e.in_c0);
  for (double v : e.x) CHECK(v == 0.0);
  CHECK(epsilon_index(e.x) == 0);
}

TEST_CASE("critical curves alternate tangent-band runs") {
  const double rho0 = 0.2;
  for (int sign : {1, -1}) {
    const Curve c = critical(3, sign, rho0);
    const ExtractionResult e = classify_curve(c, c.end_frame(), rho0, rho0 / 16);
    CHECK(e.in_c0);
    int prev = -1;
    int tangent_runs = 0;
    for (const auto& r : e.runs) {
      if (r.kind != BandKind::TangentPlus && r.kind != BandKind::TangentMinus) continue;
      if (prev >= 0) CHECK(int(r.kind) != prev);
      prev = int(r.kind);
      ++tangent_runs;
    }
    CHECK(tangent_runs >= 2);
    CHECK(epsilon_index(e.x) == 2);
  }
}

TEST_CASE("extraction preconditions") {
  const Mat3 Q = rotation_about_axis(e3(), 2.0);
  const Curve c = equator(2.0);
  CHECK_THROWS_AS(classify_curve(c, Q, 0.2, 0.2 / 8), Error);
  try {
    extract_sequence(sample_uniform(c, 5), Q, 0.2, 0.01);
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolution);
  }
}

TEST_CASE("epsilon-index examples") {
  CHECK(epsilon_index({}) == 0);
  CHECK(epsilon_index({0, 0, 0, 0}) == 0);
  CHECK(epsilon_index({1, 1, 1, 0, 1, 1, 1, 0}) == 3);
  CHECK(epsilon_index({0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0}) == 4);
}

TEST_CASE("epsilon-index is non-decreasing in epsilon") {
  const double rho0 = 0.2;
  for (int k = 1; k <= 5; ++k) {
    const Curve c = critical(k, k % 2 ? 1 : -1, rho0);
    int prev = -1;
    for (double eps : {rho0 / 32, rho0 / 16, rho0 / 10}) {
      const int idx = epsilon_index(classify_curve(c, c.end_frame(), rho0, eps).x);
      CHECK(idx >= prev);
      prev = idx;
    }
  }
}

TEST_CASE("G-coordinates") {
  CHECK(g_coordinates({0, 0, 0}, 3) == std::vector<double>{0, 0, 0});
  const double a = 0.3, c = 0.7;
  const auto y = g_coordinates({a, 0, c, 0}, 2);
  CHECK(y[0] == doctest::Approx(a * c).epsilon(1e-15));
  CHECK(y == g_coordinates_exhaustive({a, 0, c, 0}, 2));
  CHECK_THROWS_AS(g_coordinates({1, -1}, 1), Error);
}

TEST_CASE("G-coordinates match exhaustive enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 400; ++trial) {
    const int K = 1 + int(rng() % 12);
    std::vector<double> x(K);
    for (double& v : x) v = rng() % 3 == 0 ? 0.0 : u(rng);
    const int n = 1 + int(rng() % 6);
    CHECK(g_coordinates(x, n) == g_coordinates_exhaustive(x, n));
  }
}

TEST_CASE("projection to the sphere") {
  const auto p0 = project_to_sphere({0, 0, 0});
  CHECK(p0 == std::vector<double>{0, 0, 0, 1});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> a(4);
    for (double& v : a) v = u(rng);
    double norm = 0;
    for (double v : project_to_sphere(a)) norm += v * v;
    CHECK(std::abs(norm - 1) < 1e-12);
  }
}

TEST_CASE("G map basepoint and unit norm") {
  const double rho0 = 0.2;
  const Mat3 Q = rotation_about_axis(e3(), 2.0);
  ExtractionResult outside;
  outside.x = {1, 1, 1};
  outside.in_c0 = false;
  const GMapResult b = g_map(outside, 4, 1.0);
  CHECK(b.point == std::vector<double>{0, 0, 0, 0, -1});

  const GMapResult g = g_map(critical(3, 1, rho0), Q, rho0, rho0 / 16);
  CHECK(g.in_c0);
  double norm = 0;
  for (double v : g.point) norm += v * v;
  CHECK(std::abs(norm - 1) < 1e-12);
  CHECK(g.point.size() == 5);

  CHECK_THROWS_AS(g_map(outside, 0, 1.0), Error);
}

TEST_CASE("serial and parallel corpus classification agree exactly") {
  const double rho0 = 0.2;
  std::vector<Curve> corpus;
  for (int k = 1; k <= 4; ++k) corpus.push_back(critical(k, 1, rho0));
  const Mat3 Q = rotation_about_axis(e3(), 2.0);
  const auto a = classify_corpus(corpus, Q, rho0, rho0 / 16, true);
  const auto b = classify_corpus(corpus, Q, rho0, rho0 / 16, false);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].axis.v == b[k].axis.v);
  }
}
