#include "geodubins/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/index.hpp"
#include "geodubins/parallel.hpp"

namespace geodubins {

namespace {

// Longitude about c (right-hand), in (-pi, pi].
double angle_about(const Vec3& c, const Vec3& x) { return signed_angle(c, reference_meridian(c), x); }

// Continuous change of f(t) between ta and tb, sampled finely enough that
// consecutive values differ by less than pi.
template <class F>
double unwrapped_change(F f, double ta, double tb) {
  const int steps = std::max(1, int(std::ceil(std::abs(tb - ta) / 0.02)));
  double prev = f(ta), total = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double v = f(ta + (tb - ta) * k / steps);
    total += wrap_pi(v - prev);
    prev = v;
  }
  return total;
}

// Point at distance d from c along the great circle towards x.
Vec3 towards(const Vec3& c, const Vec3& x, double d) {
  Vec3 u = x - x.dot(c) * c;
  return std::cos(d) * c + std::sin(d) * u.normalized();
}

// First t from x0 in direction dir (+1 / -1) where the longitude of f(t)
// about c reaches target.
template <class F>
double angle_root(F f, const Vec3& c, double target, double x0, int dir) {
  auto h = [&](double t) { return wrap_pi(angle_about(c, f(t)) - target); };
  double a = x0, ha = h(a);
  if (std::abs(ha) < 1e-14) return x0;
  const int steps = 1024;
  const double dt = dir * 2.1 * kPi / steps;
  for (int k = 1; k <= steps; ++k) {
    const double b = x0 + k * dt, hb = h(b);
    const bool cross = (ha < 0) != (hb < 0) && std::abs(hb - ha) < kPi;
    if (hb == 0.0) return b;
    if (cross) {
      double lo = a, hi = b, hlo = ha;
      for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-13; ++it) {
        const double m = 0.5 * (lo + hi), hm = h(m);
        if ((hm < 0) == (hlo < 0))
          lo = m, hlo = hm;
        else
          hi = m;
      }
      return 0.5 * (lo + hi);
    }
    a = b;
    ha = hb;
  }
  fail(ErrorKind::Infeasible, "thresholds: control circle never reaches the target ray");
}

}  // namespace

FamilyParams make_family_params(const Mat3& Q, double rho0, double rho_tilde) {
  if (!is_rotation(Q, 1e-9)) fail(ErrorKind::InvalidInput, "family: Q is not a rotation");
  const IndexReport rep = index_report(Q, rho0);
  if (!rep.n_Q) fail(ErrorKind::InvalidInput, "family: n_Q is undefined for this Q");
  FamilyParams p;
  p.Q = Q;
  p.rho0 = rho0;
  p.n = *rep.n_Q;
  if (p.n < 0) fail(ErrorKind::InvalidInput, "family: negative n_Q");
  p.varsigma = p.n % 2 == 0 ? std::min(rep.D1, rep.D2) : std::min(rep.L1, rep.L2);
  p.delta0 = (p.varsigma - (2.0 * p.n + 2.0) * rho0) / (2.0 * p.n + 3.0);
  if (!(p.delta0 > 0)) fail(ErrorKind::InvalidInput, "family: delta0 <= 0");
  p.rho_tilde = rho_tilde > 0 ? rho_tilde : rho0 + 0.5 * std::min(p.delta0, 0.1 * rho0);
  if (!(p.rho_tilde > rho0) || !((2.0 * p.n + 2.0) * p.rho_tilde < p.varsigma))
    fail(ErrorKind::InvalidInput, "family: rho_tilde must satisfy rho0 < rho_tilde and (2n+2) rho_tilde < varsigma");
  return p;
}

ControlTrajectories::ControlTrajectories(const FamilyParams& params) : p_(params) {
  if (p_.n < 0) fail(ErrorKind::InvalidInput, "family: negative n_Q");
  if (!((2.0 * p_.n + 2.0) * p_.rho_tilde < p_.varsigma) || !(p_.rho_tilde > p_.rho0))
    fail(ErrorKind::InvalidInput, "family: rho_tilde violates (2n+2) rho_tilde < varsigma");
  const double rt = p_.rho_tilde;
  pt1_ = Vec3(std::cos(rt), 0, std::sin(rt));
  pt2_ = Vec3(std::cos(rt), 0, -std::sin(rt));
  const auto g0 = shortest_csc(Frame::Identity(), p_.Q, rt);
  if (!g0) fail(ErrorKind::Infeasible, "family: no CSC curve from I to Q with radius rho_tilde");
  gamma0_ = g0->curve;
  const double L0 = gamma0_.length();
  auto offset = [&](double tau, int side) {
    const Frame f = gamma0_.frame_at_length(tau);
    return Vec3(std::cos(rt) * f.col(0) + side * std::sin(rt) * f.col(2));
  };
  mover0_.assign(p_.n + 1, Vec3::Zero());
  branch_.assign(p_.n + 1, 1);
  for (int i = 2; i <= p_.n; ++i) {
    // The mover starts where its circle crosses the offset of gamma0 on its
    // own side; the follower starts near the opposite offset.
    const int side = i % 2 == 0 ? 1 : -1;
    const double R = 2.0 * i * rt;
    auto g = [&](double tau) { return sphere_distance(offset(tau, side), pt1_) - R; };
    const int steps = 400;
    double a = 0, ga = g(0), tau = -1;
    for (int k = 1; k <= steps; ++k) {
      const double b = L0 * k / steps, gb = g(b);
      if (ga < 0 && gb >= 0) {
        double lo = a, hi = b;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
          const double m = 0.5 * (lo + hi);
          (g(m) < 0 ? lo : hi) = m;
        }
        tau = 0.5 * (lo + hi);
        break;
      }
      a = b;
      ga = gb;
    }
    if (tau < 0)
      fail(ErrorKind::Infeasible, "family: circle of pair " + std::to_string(i) + " does not cross the offset of gamma0");
    mover0_[i] = offset(tau, side);
    const Vec3 target = offset(tau, -side);
    branch_[i] = 1;
    const Vec3 fp = follower(i, 0.0);
    branch_[i] = -1;
    const Vec3 fm = follower(i, 0.0);
    branch_[i] = (fp - target).norm() <= (fm - target).norm() ? 1 : -1;
  }
}

Vec3 ControlTrajectories::mover(int i, double s) const { return rotation_about_axis(pt1_, s) * mover0_[i]; }

Vec3 ControlTrajectories::follower(int i, double s) const {
  const Vec3 m = mover(i, s);
  const double cR = std::cos(2.0 * i * p_.rho_tilde), c2 = std::cos(2.0 * p_.rho_tilde);
  const double g = pt2_.dot(m);
  const double den = 1.0 - g * g;
  const double a = (cR - g * c2) / den, b = (c2 - g * cR) / den;
  const double cc = std::max(0.0, 1.0 - (a * a + b * b + 2 * a * b * g));
  const Vec3 w = pt2_.cross(m).normalized();
  // The smooth branch changes label where the mover crosses the plane of
  // pt1 and pt2 (the two candidates merge there).
  const int label = branch_[i] * (m.dot(e2()) >= 0 ? 1 : -1);
  return a * pt2_ + b * m + label * std::sqrt(cc) * w;
}

Vec3 ControlTrajectories::l(int i, double s) const {
  if (i < 1 || i > p_.n) fail(ErrorKind::InvalidInput, "family: pair index out of range");
  if (i == 1) return s >= 0 ? pt1_ : Vec3(rotation_about_axis(pt2_, s) * pt1_);
  return i % 2 == 0 ? mover(i, s) : follower(i, s);
}

Vec3 ControlTrajectories::r(int i, double s) const {
  if (i < 1 || i > p_.n) fail(ErrorKind::InvalidInput, "family: pair index out of range");
  if (i == 1) return s >= 0 ? Vec3(rotation_about_axis(pt1_, s) * pt2_) : pt2_;
  return i % 2 == 0 ? follower(i, s) : mover(i, s);
}

const Vec3& ControlTrajectories::l_center(int i) const { return i % 2 == 0 ? pt1_ : pt2_; }
const Vec3& ControlTrajectories::r_center(int i) const { return i % 2 == 0 ? pt2_ : pt1_; }

Frame ControlTrajectories::frame(int i, double s) const {
  if (i == 1) return s >= 0 ? rotation_about_axis(pt1_, s) : rotation_about_axis(pt2_, s);
  const Vec3 lv = l(i, s), rv = r(i, s);
  const Vec3 x = (lv + rv).normalized();
  Vec3 n = lv - rv;
  n = (n - n.dot(x) * x).normalized();
  Frame f;
  f.col(0) = x;
  f.col(1) = n.cross(x);
  f.col(2) = n;
  return f;
}

std::pair<double, double> ControlTrajectories::thresholds(int i, double x_i) const {
  if (i < 1 || i >= p_.n) fail(ErrorKind::InvalidInput, "thresholds: need 1 <= i < n_Q");
  const Vec3& cA = r_center(i);
  const Vec3& cB = l_center(i);
  const double t1 = angle_root([&](double t) { return l(i + 1, t); }, cA, angle_about(cA, r(i, x_i)), x_i, -1);
  const double t2 = angle_root([&](double t) { return r(i + 1, t); }, cB, angle_about(cB, l(i, x_i)), x_i, +1);
  return {t1, t2};
}

AlphaSegment alpha_segment(const ControlTrajectories& traj, int i, double x_i, double x_next) {
  const int n = traj.pairs();
  const double rt = traj.rho();
  if (i < 0 || i > n) fail(ErrorKind::InvalidInput, "alpha_segment: index out of range");
  AlphaSegment out;
  if (i == 0) {
    // x_next is x_1; the segment runs along the pair-1 circle.
    out.regime = AlphaRegime::Arc;
    out.curve.start = Frame::Identity();
    if (n == 0) {
      out.curve = traj.gamma0();
      out.regime = AlphaRegime::Final;
      return out;
    }
    if (x_next != 0.0) out.curve.arcs.push_back(arc_from_frame(Frame::Identity(), x_next > 0 ? 1 : -1, rt, std::abs(x_next)));
    return out;
  }
  const Frame Qi = traj.frame(i, x_i);
  if (i == n) {
    out.regime = AlphaRegime::Final;
    const auto c = shortest_csc(Qi, traj.params().Q, rt);
    if (!c) fail(ErrorKind::Infeasible, "alpha_segment: no CSC curve from Q_n to Q");
    out.curve = c->curve;
    return out;
  }
  const Frame Qn = traj.frame(i + 1, x_next);
  const auto [t1, t2] = traj.thresholds(i, x_i);
  out.x1 = t1;
  out.x2 = t2;
  if (x_next >= t1 && x_next <= t2) {
    out.regime = AlphaRegime::Middle;
    const auto c = shortest_csc(Qi, Qn, rt);
    if (!c) fail(ErrorKind::Infeasible, "alpha_segment: no CSC curve between consecutive control frames");
    out.curve = c->curve;
    return out;
  }
  const bool low = x_next < t1;
  out.regime = low ? AlphaRegime::Low : AlphaRegime::High;
  const int s = low ? -1 : 1;  // turning side of the first and middle arcs
  const Vec3 first = low ? traj.r(i, x_i) : traj.l(i, x_i);
  const Vec3& c = low ? traj.r_center(i) : traj.l_center(i);
  auto member = [&](double t) { return low ? traj.l(i + 1, t) : traj.r(i + 1, t); };
  const double thr = low ? t1 : t2;
  const double R = (2.0 * i + 1.0) * rt;

  const Vec3 a1 = towards(c, first, R);
  const double sweep1 = wrap_2pi(s * signed_angle(first, Qi.col(0), a1));
  const double sweep2 = s * unwrapped_change([&](double t) { return angle_about(c, member(t)); }, thr, x_next);
  // Shortest arc on the last control circle; its sweep wraps once per
  // revolution of the pair, so only the middle arc accumulates turns.
  const Vec3 m_end = member(x_next);
  const double sweep3 = wrap_2pi(-s * signed_angle(m_end, towards(m_end, c, rt), Qn.col(0)));
  if (sweep2 < -1e-12)
    fail(ErrorKind::Infeasible, "alpha_segment: negative middle sweep " + std::to_string(sweep2));
  Curve cv;
  cv.start = Qi;
  Frame f = Qi;
  auto push = [&](int side, double radius, double sweep) {
    sweep = std::max(0.0, sweep);
    const OrientedArc a = arc_from_frame(f, side, radius, sweep);
    f = arc_frame(a, sweep);
    if (sweep > 0.0) cv.arcs.push_back(a);
  };
  push(s, rt, sweep1);
  push(s, R, sweep2);
  push(-s, rt, sweep3);
  const double err = frame_distance(cv.end_frame(), Qn);
  if (err > 1e-8)
    fail(ErrorKind::Infeasible, "alpha_segment: outer-regime construction misses Q_{i+1} by " + std::to_string(err));
  out.curve = cv;
  return out;
}

Curve f_bar(const ControlTrajectories& traj, const std::vector<double>& x) {
  const int n = traj.pairs();
  if (int(x.size()) != n)
    fail(ErrorKind::InvalidInput, "f_bar: expected " + std::to_string(n) + " parameters, got " + std::to_string(x.size()));
  for (double v : x)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "f_bar: non-finite parameter");
  if (n == 0) return traj.gamma0();
  Curve c = alpha_segment(traj, 0, 0.0, x[0]).curve;
  for (int i = 1; i <= n; ++i) {
    const AlphaSegment seg = alpha_segment(traj, i, x[i - 1], i < n ? x[i] : 0.0);
    c = concatenate(c, seg.curve, 1e-8);
  }
  return c;
}

Curve f_bar(const FamilyParams& params, const std::vector<double>& x) { return f_bar(ControlTrajectories(params), x); }

std::vector<Curve> f_bar_grid(const ControlTrajectories& traj, const std::vector<std::vector<double>>& xs,
                              bool parallel) {
  std::vector<Curve> out(xs.size());
  std::vector<std::string> errors(xs.size());
  std::vector<ErrorKind> kinds(xs.size(), ErrorKind::Infeasible);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) if (parallel)
  for (long k = 0; k < long(xs.size()); ++k) {
    try {
      out[k] = f_bar(traj, xs[k]);
    } catch (const Error& e) {
      errors[k] = e.what();
      kinds[k] = e.kind();
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (!errors[k].empty()) fail(kinds[k], "f_bar_grid: point " + std::to_string(k) + ": " + errors[k]);
  return out;
}

double c1_distance(const Curve& a, const Curve& b, std::size_t n) {
  const SampledCurve sa = sample_uniform(a, n), sb = sample_uniform(b, n);
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    d = std::max({d, (sa.points[k] - sb.points[k]).norm(), (sa.tangents[k] - sb.tangents[k]).norm()});
  return d;
}

}  // namespace geodubins
