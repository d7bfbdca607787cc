#include "geodubins/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geodubins/errors.hpp"

namespace geodubins {

namespace {

constexpr double kFrameTol = 1e-8;

const char* circle_name(int side, bool at_start) {
  if (at_start) return side > 0 ? "C1" : "C2";
  return side > 0 ? "C3" : "C4";
}

Vec3 left_center(const Frame& f, int side, double rho) {
  return (std::cos(rho) * f.col(0) + side * std::sin(rho) * f.col(2)).normalized();
}

void push_arc(Curve& c, const Frame& from, int side, double radius, double sweep, Frame& to) {
  OrientedArc a = arc_from_frame(from, side, radius, sweep);
  to = arc_frame(a, sweep);
  if (sweep > 0) c.arcs.push_back(a);
}

Curve realize_csc(const Frame& P, double rho, int s1, double alpha, double theta, int s2, double beta) {
  Curve c;
  c.start = P;
  Frame f1, f2, f3;
  push_arc(c, P, s1, rho, alpha, f1);
  push_arc(c, f1, 1, kPi / 2, theta, f2);
  push_arc(c, f2, s2, rho, beta, f3);
  return c;
}

Curve realize_ccc(const Frame& P, double rho, int side, double alpha, double lambda, double beta) {
  Curve c;
  c.start = P;
  Frame f1, f2, f3;
  push_arc(c, P, side, rho, alpha, f1);
  push_arc(c, f1, -side, rho, lambda, f2);
  push_arc(c, f2, side, rho, beta, f3);
  return c;
}

}  // namespace

std::string CscSolution::case_id() const {
  return std::string(circle_name(first_side, true)) + "S" + circle_name(last_side, false) + "/" +
         std::to_string(choice);
}

std::string CccSolution::case_id() const {
  return std::string(side > 0 ? "LRL" : "RLR") + "/" + std::to_string(choice);
}

double PathSolution::length() const {
  return std::visit([](const auto& s) { return s.length; }, value);
}

const Curve& PathSolution::curve() const {
  return std::visit([](const auto& s) -> const Curve& { return s.curve; }, value);
}

std::string PathSolution::case_id() const {
  return std::visit([](const auto& s) { return s.case_id(); }, value);
}

std::vector<CscSolution> csc_candidates(const Frame& P, const Frame& Q, double rho) {
  if (!(rho > 0 && rho < kPi / 2)) fail(ErrorKind::InvalidInput, "csc_candidates: rho must lie in (0, pi/2)");
  const Frame R = P.transpose() * Q;
  const double C = std::cos(rho), S = std::sin(rho);
  const Vec3 q = R.col(0), nq = R.col(2);
  std::vector<CscSolution> out;

  auto accept = [&](CscSolution s) {
    s.length = s.theta + (s.alpha + s.beta) * S;
    s.curve = realize_csc(P, rho, s.first_side, s.alpha, s.theta, s.last_side, s.beta);
    if (frame_distance(s.curve.end_frame(), Q) > kFrameTol) return;
    for (const auto& o : out) {
      if (std::abs(o.length - s.length) < 1e-9 &&
          frame_distance(o.curve.frame_at(0.5), s.curve.frame_at(0.5)) < 1e-7)
        return;
    }
    out.push_back(std::move(s));
  };

  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      const Vec3 c1 = C * e1() + s1 * S * e3();
      const Vec3 c2 = (C * q + s2 * S * nq).normalized();
      const double one_minus_g = 0.5 * (c1 - c2).squaredNorm();
      const double one_plus_g = 0.5 * (c1 + c2).squaredNorm();

      if (s1 == s2 && (c1 - c2).norm() < 1e-9) {
        // Same circle at both ends: a single arc.
        CscSolution s{s1, s2, 1, wrap_2pi(s1 * signed_angle(c1, e1(), q)), 0.0, 0.0, 0.0, {}};
        accept(s);
        continue;
      }
      if (s1 != s2 && (c1 + c2).norm() < 1e-9) {
        // Antipodal centers: every tangent geodesic of one circle touches the
        // other. Keep the two members with a vanishing end arc.
        const Vec3 ms[2] = {e3(), nq};
        for (int k = 0; k < 2; ++k) {
          const Vec3 m = ms[k];
          Vec3 a = (c1 - s1 * S * m) / C, b = (c2 - s2 * S * m) / C;
          CscSolution s{s1, s2, k + 1, wrap_2pi(s1 * signed_angle(c1, e1(), a)),
                        wrap_2pi(std::atan2(m.dot(a.cross(b)), a.dot(b))),
                        wrap_2pi(s2 * signed_angle(c2, b, q)), 0.0, {}};
          accept(s);
        }
        continue;
      }
      // m = x c1 + y c2 + z w with <m,c1> = s1 S, <m,c2> = s2 S, |m| = 1.
      const double a1 = s1 * S, a2 = s2 * S;
      // Split the solve along c1 + c2 and c1 - c2, which is stable near both
      // degenerate configurations.
      const double sum = (a1 + a2) / (2 * one_plus_g);
      const double dif = (a1 - a2) / (2 * one_minus_g);
      const double xs = sum + dif, ys = sum - dif;
      const Vec3 base = xs * c1 + ys * c2;
      const double z2 = 1.0 - base.squaredNorm();
      if (z2 < -1e-14) continue;
      const Vec3 w = c1.cross(c2).normalized();
      const double z = std::sqrt(std::max(0.0, z2));
      for (int choice = 1; choice <= 2; ++choice) {
        if (choice == 2 && z == 0.0) break;
        const Vec3 m = (base + (choice == 1 ? z : -z) * w).normalized();
        const Vec3 a = ((c1 - s1 * S * m) / C).normalized();
        const Vec3 b = ((c2 - s2 * S * m) / C).normalized();
        CscSolution s{s1, s2, choice, wrap_2pi(s1 * signed_angle(c1, e1(), a)),
                      wrap_2pi(std::atan2(m.dot(a.cross(b)), a.dot(b))), wrap_2pi(s2 * signed_angle(c2, b, q)),
                      0.0, {}};
        accept(s);
      }
    }
  }
  return out;
}

CscClosedForm csc_closed_form(const Frame& R, double rho, int s1, int s2, int choice) {
  CscClosedForm r;
  const double C = std::cos(rho), S = std::sin(rho), T = std::tan(rho);
  const Vec3 q = R.col(0), nq = R.col(2);
  const Vec3 c1 = C * e1() + s1 * S * e3();
  const Vec3 c2 = C * q + s2 * S * nq;
  const double g = c1.dot(c2);
  // cos(theta) = <c1,c2>/cos^2 - tan^2 for equal sides, + tan^2 for opposite.
  const double cos_theta = g / (C * C) - s1 * s2 * T * T;
  if (cos_theta > 1.0 + 1e-12 || cos_theta < -1.0 - 1e-12) return r;
  const double th = std::acos(std::clamp(cos_theta, -1.0, 1.0));
  // The sign of <m, c1 x c2> picks the geodesic; choice 1 has it positive.
  r.theta = choice == 1 ? th : wrap_2pi(kTwoPi - th);
  // Recover the geodesic pole from the two tangency conditions.
  const double det = 1.0 - g * g;
  if (det < 1e-14) return r;
  const double x = (s1 * S - g * s2 * S) / det, y = (s2 * S - g * s1 * S) / det;
  const Vec3 cx = c1.cross(c2);
  const double z2 = 1.0 - (x * x + y * y + 2 * x * y * g);
  if (z2 < -1e-12) return r;
  const double z = (choice == 1 ? 1 : -1) * std::sqrt(std::max(0.0, z2)) / cx.norm();
  const Vec3 m = x * c1 + y * c2 + z * cx;
  r.alpha = wrap_2pi(s1 * std::atan2(c1.dot(e3().cross(m)), e3().dot(m) - S * S));
  r.beta = wrap_2pi(s2 * std::atan2(c2.dot(m.cross(nq)), m.dot(nq) - S * S));
  r.length = r.theta + (r.alpha + r.beta) * S;
  r.feasible = true;
  return r;
}

std::vector<CccSolution> ccc_candidates(const Frame& P, const Frame& Q, double rho) {
  if (!(rho > 0 && rho < kPi / 2)) fail(ErrorKind::InvalidInput, "ccc_candidates: rho must lie in (0, pi/2)");
  const Frame R = P.transpose() * Q;
  const double S = std::sin(rho);
  const Vec3 q = R.col(0);
  std::vector<CccSolution> out;
  for (int side : {1, -1}) {
    const Vec3 c1 = left_center(Frame::Identity(), side, rho);
    const Vec3 c3 = left_center(R, side, rho);
    if (sphere_distance(c1, c3) > 4 * rho + 1e-12) continue;
    const double one_plus_g = 0.5 * (c1 + c3).squaredNorm();
    const Vec3 cx = c1.cross(c3);
    if (cx.norm() < 1e-12) continue;
    const double k = std::cos(2 * rho) / one_plus_g;
    const Vec3 base = k * (c1 + c3);
    const double z2 = 1.0 - base.squaredNorm();
    if (z2 < -1e-14) continue;
    const double z = std::sqrt(std::max(0.0, z2));
    const Vec3 w = cx.normalized();
    for (int choice = 1; choice <= 2; ++choice) {
      if (choice == 2 && z == 0.0) break;
      const Vec3 c2 = (base + (choice == 1 ? z : -z) * w).normalized();
      const Vec3 x12 = (c1 + c2).normalized(), x23 = (c2 + c3).normalized();
      CccSolution s;
      s.side = side;
      s.choice = choice;
      s.alpha = wrap_2pi(side * signed_angle(c1, e1(), x12));
      s.lambda = wrap_2pi(-side * signed_angle(c2, x12, x23));
      s.beta = wrap_2pi(side * signed_angle(c3, x23, q));
      s.length = (s.alpha + s.lambda + s.beta) * S;
      s.long_middle = s.lambda > kPi;
      s.curve = realize_ccc(P, rho, side, s.alpha, s.lambda, s.beta);
      if (frame_distance(s.curve.end_frame(), Q) > kFrameTol) continue;
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::optional<CscSolution> shortest_csc(const Frame& P, const Frame& Q, double rho) {
  auto cands = csc_candidates(P, Q, rho);
  if (cands.empty()) return std::nullopt;
  return *std::min_element(cands.begin(), cands.end(),
                           [](const auto& a, const auto& b) { return a.length < b.length; });
}

PathSolution shortest_path(const Frame& P, const Frame& Q, double rho) {
  double best = std::numeric_limits<double>::infinity();
  PathSolution out;
  bool found = false;
  for (auto& s : csc_candidates(P, Q, rho)) {
    if (s.length < best) {
      best = s.length;
      out.value = std::move(s);
      found = true;
    }
  }
  for (auto& s : ccc_candidates(P, Q, rho)) {
    if (s.length < best - 1e-12) {
      best = s.length;
      out.value = std::move(s);
      found = true;
    }
  }
  if (!found) fail(ErrorKind::Infeasible, "shortest_path: no CSC or CCC candidate");
  return out;
}

}  // namespace geodubins
