#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/index.hpp"
#include "test_util.hpp"

using namespace geodubins;

namespace {

// Smallest integer m with m >= x, by counting.
int count_ceil(double x) {
  int m = -100;
  while (m < x - 1e-12) ++m;
  return m;
}

}  // namespace

TEST_CASE("endpoint centers") {
  const double rho = 0.2;
  const EndpointCenters id = endpoint_centers(Mat3::Identity(), rho);
  CHECK((id.p1 - Vec3(std::cos(rho), 0, std::sin(rho))).norm() < 1e-15);
  CHECK((id.p2 - Vec3(std::cos(rho), 0, -std::sin(rho))).norm() < 1e-15);
  CHECK((id.q1 - id.p1).norm() < 1e-15);
  CHECK((id.q2 - id.p2).norm() < 1e-15);
  const double th = 1.1;
  const EndpointCenters c = endpoint_centers(rotation_about_axis(e3(), th), rho);
  CHECK((c.q1 - Vec3(std::cos(rho) * std::cos(th), std::cos(rho) * std::sin(th), std::sin(rho))).norm() < 1e-15);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const EndpointCenters r = endpoint_centers(testutil::random_rotation(rng), rho);
    CHECK(std::abs(sphere_distance(r.q1, r.q2) - 2 * rho) < 1e-12);
  }
  CHECK_THROWS_AS(endpoint_centers(Mat3::Identity(), 0.9), Error);
  CHECK_THROWS_AS(endpoint_centers(Mat3::Identity(), 0.0), Error);
}

TEST_CASE("index report on equator rotations") {
  for (double rho : {0.1, 0.2, 0.3}) {
    for (double th : {0.5, 1.0, 2.0, 3.0}) {
      const IndexReport r = index_report(rotation_about_axis(e3(), th), rho);
      const double c2 = std::pow(std::cos(rho), 2), s2 = std::pow(std::sin(rho), 2);
      CHECK(std::abs(r.L1 - std::acos(c2 * std::cos(th) + s2)) < 1e-12);
      CHECK(std::abs(r.D1 - std::acos(c2 * std::cos(th) - s2)) < 1e-12);
      CHECK(r.Lbar1 == 2 * count_ceil(r.L1 / (4 * rho)) - 3);
      CHECK(r.Dbar1 == 2 * count_ceil(r.D1 / (4 * rho) - 0.5) - 2);
      CHECK(r.Lbar1 % 2 != 0);
      CHECK(r.Dbar1 % 2 == 0);
    }
  }
  CHECK(index_report(rotation_about_axis(e3(), 2.0), 0.2).n_Q == 4);
  CHECK(index_report(rotation_about_axis(e3(), 1.0), 0.2).n_Q == 1);
}

TEST_CASE("index branches are consistent") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 500; ++k) {
    const IndexReport r = index_report(testutil::random_rotation(rng), 0.15);
    const int lmin = std::min(r.Lbar1, r.Lbar2), lmax = std::max(r.Lbar1, r.Lbar2);
    const int dmin = std::min(r.Dbar1, r.Dbar2), dmax = std::max(r.Dbar1, r.Dbar2);
    if (lmin > dmax) {
      REQUIRE(r.n_Q.has_value());
      CHECK(*r.n_Q == r.Lbar1);
      CHECK(r.Lbar1 == r.Lbar2);
    } else if (dmin > lmax) {
      REQUIRE(r.n_Q.has_value());
      CHECK(*r.n_Q == r.Dbar1);
      CHECK(r.Dbar1 == r.Dbar2);
    } else {
      CHECK_FALSE(r.n_Q.has_value());
    }
  }
}

TEST_CASE("hypotheses on equator rotations") {
  const IndexReport r = index_report(rotation_about_axis(e3(), 2.0), 0.2);
  CHECK(r.hyp.h1);
  CHECK(r.hyp.h2);
  CHECK(r.hyp.h3);
  CHECK(r.hyp.h4);
  const IndexReport back = index_report(rotation_about_axis(e3(), -1.0), 0.2);
  CHECK_FALSE(back.hyp.h1);
}

TEST_CASE("spherical convexity and polygon distance") {
  const std::vector<Vec3> square{Vec3(1, 0.1, 0.1).normalized(), Vec3(1, -0.1, 0.1).normalized(),
                                 Vec3(1, -0.1, -0.1).normalized(), Vec3(1, 0.1, -0.1).normalized()};
  CHECK(spherical_convex(square));
  std::vector<Vec3> rev(square.rbegin(), square.rend());
  CHECK(spherical_convex(rev));
  std::vector<Vec3> bow{square[0], square[2], square[1], square[3]};
  CHECK_FALSE(spherical_convex(bow));
  CHECK(distance_to_polygon(square, e1()) == 0.0);
  const Vec3 out = Vec3(1, 0.3, 0).normalized();
  const double edge = std::abs(std::asin(out.dot(square[0].cross(square[3]).normalized())));
  CHECK(std::abs(distance_to_polygon(square, out) - edge) < 1e-12);
}

TEST_CASE("critical curves") {
  const double rho0 = 0.2;
  for (int k = 1; k <= 5; ++k) {
    for (int lead : {1, -1}) {
      CriticalSpec spec;
      spec.rho0 = rho0;
      spec.leading_sign = lead;
      for (int i = 0; i <= k; ++i) spec.radii.push_back(i % 2 == 0 ? 0.35 : 0.5);
      const Curve c = generate_critical(spec);
      CHECK(int(spec.sign_string().size()) == k);
      CHECK(spec.sign_string()[0] == (lead > 0 ? '+' : '-'));
      const CriticalValidation v = validate_critical(c, spec);
      CHECK(v.valid());
      CHECK(v.cocircular_error < 1e-9);
      CHECK(c.junction_defect() < 1e-12);
      for (std::size_t i = 1; i + 1 < c.arcs.size(); ++i)
        CHECK(std::abs(c.arcs[i].length() - kPi * std::sin(c.arcs[i].radius)) < 1e-14);
    }
  }
  CriticalSpec big;
  big.rho0 = rho0;
  big.radii = {0.3, kPi - 0.4, 0.3};
  CHECK(validate_critical(generate_critical(big), big).valid());
  CriticalSpec bad;
  bad.rho0 = rho0;
  bad.radii = {0.1, 0.3};
  CHECK_THROWS_AS(generate_critical(bad), Error);
}

TEST_CASE("bound symmetrization uses the explicit y-axis matrix") {
  const double th = 0.4;
  Mat3 literal;
  literal << std::cos(th), 0, -std::sin(th), 0, 1, 0, std::sin(th), 0, std::cos(th);
  CHECK(frame_distance(y_rotation(th), literal) == 0.0);
  CHECK(frame_distance(y_rotation(th), rotation_about_axis(e2(), -th)) < 1e-15);

  const SymmetrizedBounds sym = symmetrize_bounds(-1.0, 3.0, Mat3::Identity());
  const double r1 = kPi / 2 - std::atan(-1.0), r2 = kPi / 2 - std::atan(3.0);
  CHECK(std::abs(2 * std::atan(1 / sym.kappa0) - (kPi - (r1 - r2))) < 1e-14);
  CHECK(frame_distance(sym.Q, Mat3::Identity()) < 1e-15);
  // Symmetric bounds need no rotation.
  const SymmetrizedBounds same = symmetrize_bounds(-2.0, 2.0, rotation_about_axis(e3(), 1.0));
  CHECK(std::abs(same.theta) < 1e-15);
  CHECK(std::abs(same.kappa0 - 2.0) < 1e-14);
  // Infinite bounds are allowed.
  const SymmetrizedBounds inf = symmetrize_bounds(-INFINITY, 1.0, Mat3::Identity());
  CHECK(std::isfinite(inf.kappa0));
  CHECK_THROWS_AS(symmetrize_bounds(1.0, 1.0, Mat3::Identity()), Error);
}

TEST_CASE("triviality witness") {
  const double rho0 = 0.2;
  int found = 0;
  for (double th = 0.3; th < 2.8; th += 0.37) {
    for (double vt = 0.3; vt < 2.8; vt += 0.41) {
      for (double rho = 0.1; rho < 6.2; rho += 0.9) {
        const Mat3 Q = witness_matrix(th, vt, rho);
        REQUIRE(is_rotation(Q));
        const auto w = trivial_witness(Q, rho0);
        if (!w) continue;
        ++found;
        CHECK(frame_distance(witness_matrix(w->theta, w->vartheta, w->rho), Q) < 1e-8);
      }
    }
  }
  CHECK(found > 20);
}
