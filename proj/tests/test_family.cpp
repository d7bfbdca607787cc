#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geodubins/classifier.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/family.hpp"
#include "geodubins/index.hpp"

using namespace geodubins;

namespace {

const Mat3 kQ = rotation_about_axis(e3(), 2.0);
constexpr double kRho0 = 0.2;

}  // namespace

TEST_CASE("parameters") {
  const FamilyParams p = make_family_params(kQ, kRho0);
  CHECK(p.n == 4);
  CHECK(p.rho_tilde > kRho0);
  CHECK((2 * p.n + 2) * p.rho_tilde < p.varsigma);
  CHECK_THROWS_AS(make_family_params(kQ, kRho0, 0.3), Error);
}

TEST_CASE("control pairs keep distance 2 rho~") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  for (int i = 1; i <= tr.pairs(); ++i)
    for (double s = -7.0; s <= 7.0; s += 0.37) {
      CHECK(std::abs(sphere_distance(tr.l(i, s), tr.r(i, s)) - 2 * tr.rho()) < 1e-10);
      const Frame f = tr.frame(i, s);
      CHECK(is_rotation(f, 1e-10));
    }
}

TEST_CASE("f_bar(0) is the shortest curve") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  const Curve c = f_bar(tr, std::vector<double>(tr.pairs(), 0.0));
  CHECK(c1_distance(c, tr.gamma0()) < 1e-7);
  CHECK(std::abs(c.length() - 2.0) < 1e-7);
}

TEST_CASE("members end at Q with curvature below cot rho0") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double kmax = std::cos(tr.rho()) / std::sin(tr.rho());
  for (int k = 0; k < 30; ++k) {
    std::vector<double> x(tr.pairs());
    for (double& v : x) v = u(rng);
    const Curve c = f_bar(tr, x);
    CHECK(frame_distance(c.start, Mat3::Identity()) < 1e-12);
    CHECK(frame_distance(c.end_frame(), kQ) < 1e-8);
    CHECK(c.junction_defect() < 1e-8);
    CHECK(c.max_abs_curvature() <= kmax + 1e-9);
  }
}

TEST_CASE("alpha segments connect consecutive tangency frames") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  const std::vector<double> x{0.4, -0.3, 1.1, -0.8};
  for (int i = 1; i < tr.pairs(); ++i) {
    const AlphaSegment a = alpha_segment(tr, i, x[i - 1], x[i]);
    CHECK(frame_distance(a.curve.start, tr.frame(i, x[i - 1])) < 1e-8);
    CHECK(frame_distance(a.curve.end_frame(), tr.frame(i + 1, x[i])) < 1e-8);
    CHECK(a.x1 <= x[i - 1] + 1e-12);
    CHECK(a.x2 >= x[i - 1] - 1e-12);
  }
  CHECK(alpha_segment(tr, 0, 0.0, 1.3).regime == AlphaRegime::Arc);
  CHECK(alpha_segment(tr, tr.pairs(), 0.2, 0.0).regime == AlphaRegime::Final);
}

TEST_CASE("f_bar is continuous on a parameter grid") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> x(tr.pairs());
    for (double& v : x) v = u(rng);
    std::vector<double> y = x;
    for (double& v : y) v += 1e-7;
    CHECK(c1_distance(f_bar(tr, x), f_bar(tr, y), 501) < 1e-4);
  }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  const std::vector<std::vector<double>> xs{{0, 0, 0, 0}, {0.5, 0.1, -0.2, 0.3}, {-1, 1, -1, 1}};
  const auto par = f_bar_grid(tr, xs, true);
  const auto ser = f_bar_grid(tr, xs, false);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    CHECK(c1_distance(par[k], ser[k], 101) == 0.0);
    CHECK(c1_distance(par[k], f_bar(tr, xs[k]), 101) == 0.0);
  }
  CHECK_THROWS_AS(f_bar(tr, {1.0}), Error);
}

TEST_CASE("epsilon-index of C0 members is bounded by n_Q") {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int in_c0 = 0;
  for (int k = 0; k < 40; ++k) {
    std::vector<double> x(tr.pairs());
    for (double& v : x) v = u(rng);
    const ExtractionResult e = classify_curve(f_bar(tr, x), kQ, kRho0, kRho0 / 16);
    if (!e.in_c0) continue;
    ++in_c0;
    CHECK(epsilon_index(e.x) <= tr.pairs());
  }
  CHECK(in_c0 > 5);
}
