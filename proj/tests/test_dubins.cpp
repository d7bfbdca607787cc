#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/index.hpp"
#include "test_util.hpp"

using namespace geodubins;

TEST_CASE("equator targets are reached by the geodesic") {
  for (double rho : {0.1, 0.2, 0.5}) {
    for (double th : {0.3, 1.0, 2.0, 3.0}) {
      const auto sol = shortest_path(Frame::Identity(), rotation_about_axis(e3(), th), rho);
      CHECK(std::abs(sol.length() - th) < 1e-10);
      CHECK(sol.is_csc());
    }
  }
}

TEST_CASE("identity target has zero length") {
  const auto sol = shortest_path(Frame::Identity(), Frame::Identity(), 0.3);
  CHECK(sol.length() < 1e-12);
}

TEST_CASE("CSC candidates agree with the closed form") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> urho(0.05, kPi / 4);
  for (int k = 0; k < 200; ++k) {
    const Mat3 Q = testutil::random_rotation(rng);
    const double rho = urho(rng);
    for (const auto& c : csc_candidates(Frame::Identity(), Q, rho)) {
      const CscClosedForm cf = csc_closed_form(Q, rho, c.first_side, c.last_side, c.choice);
      REQUIRE(cf.feasible);
      CHECK(std::abs(cf.length - c.curve.length()) < 1e-9);
      CHECK(std::abs(cf.length - (cf.theta + (cf.alpha + cf.beta) * std::sin(rho))) < 1e-12);
      CHECK(frame_distance(c.curve.end_frame(), Q) < 1e-8);
    }
  }
}

TEST_CASE("same-orientation geodesic angle follows the tangent-center formula") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const Mat3 Q = testutil::random_rotation(rng);
    const double rho = 0.25;
    const EndpointCenters c = endpoint_centers(Q, rho);
    for (int side : {1, -1}) {
      const Vec3 a = side > 0 ? c.p1 : c.p2, b = side > 0 ? c.q1 : c.q2;
      const double cos_theta = a.dot(b) / std::pow(std::cos(rho), 2) - std::pow(std::tan(rho), 2);
      const CscClosedForm cf = csc_closed_form(Q, rho, side, side, 1);
      if (!cf.feasible) continue;
      CHECK(std::abs(std::cos(cf.theta) - cos_theta) < 1e-10);
    }
    // Opposite orientations: the tan^2 term changes sign.
    const double cos_mixed = c.p1.dot(c.q2) / std::pow(std::cos(rho), 2) + std::pow(std::tan(rho), 2);
    const CscClosedForm lr = csc_closed_form(Q, rho, 1, -1, 1);
    if (lr.feasible) CHECK(std::abs(std::cos(lr.theta) - cos_mixed) < 1e-10);
  }
}

TEST_CASE("CCC candidates realize the target frame") {
  std::mt19937_64 rng(9);
  int found = 0;
  for (int k = 0; k < 200; ++k) {
    // Nearby targets make CCC candidates common.
    const Mat3 Q = rotation_about_axis(testutil::random_unit(rng), 0.4) ;
    for (const auto& c : ccc_candidates(Frame::Identity(), Q, 0.3)) {
      ++found;
      CHECK(frame_distance(c.curve.end_frame(), Q) < 1e-8);
      CHECK(c.curve.junction_defect() < 1e-9);
      CHECK(std::abs(c.length - c.curve.length()) < 1e-12);
      CHECK(c.long_middle == (c.lambda > kPi));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("planner matches the dense sweep oracle") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> urho(0.05, kPi / 4);
  for (int k = 0; k < 40; ++k) {
    const Mat3 Q = testutil::random_rotation(rng);
    const double rho = urho(rng);
    const double planner = shortest_path(Frame::Identity(), Q, rho).length();
    const double oracle = sweep_oracle(Frame::Identity(), Q, rho);
    CHECK(std::abs(planner - oracle) < 1e-6);
  }
}

TEST_CASE("parallel and serial oracle agree exactly") {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 5; ++k) {
    const Mat3 Q = testutil::random_rotation(rng);
    CHECK(sweep_oracle(Frame::Identity(), Q, 0.3, 1024) == sweep_oracle_serial(Frame::Identity(), Q, 0.3, 1024));
  }
}

TEST_CASE("planning between arbitrary frames is invariant under rotation") {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 20; ++k) {
    const Mat3 P = testutil::random_rotation(rng), Q = testutil::random_rotation(rng);
    const auto a = shortest_path(P, Q, 0.3);
    const auto b = shortest_path(Frame::Identity(), P.transpose() * Q, 0.3);
    CHECK(std::abs(a.length() - b.length()) < 1e-10);
    CHECK(frame_distance(a.curve().start, P) < 1e-12);
    CHECK(frame_distance(a.curve().end_frame(), Q) < 1e-8);
  }
}

TEST_CASE("invalid radius is rejected") {
  CHECK_THROWS_AS(shortest_path(Frame::Identity(), Frame::Identity(), 0.0), Error);
  CHECK_THROWS_AS(shortest_path(Frame::Identity(), Frame::Identity(), kPi / 2), Error);
}
