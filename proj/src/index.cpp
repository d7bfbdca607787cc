#include "geodubins/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"

namespace geodubins {

namespace {

// Ceiling that treats arguments within 1e-12 of an integer as that integer,
// so exact multiples of 4 rho0 are not pushed up by rounding.
int snapped_ceil(double x) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-12) return int(r);
  return int(std::ceil(x));
}

void check_rho0(double rho0) {
  if (!(rho0 > 0 && rho0 < kPi / 4)) fail(ErrorKind::InvalidInput, "rho0 must lie in (0, pi/4)");
}

}  // namespace

EndpointCenters endpoint_centers(const Mat3& Q, double rho0) {
  check_rho0(rho0);
  EndpointCenters c;
  c.p1 = Vec3(std::cos(rho0), 0, std::sin(rho0));
  c.p2 = Vec3(std::cos(rho0), 0, -std::sin(rho0));
  c.q1 = Q * c.p1;
  c.q2 = Q * c.p2;
  return c;
}

int truncated_side(double L, double rho0) { return 2 * snapped_ceil(L / (4 * rho0)) - 3; }

int truncated_diagonal(double D, double rho0) { return 2 * snapped_ceil(D / (4 * rho0) - 0.5) - 2; }

IndexReport index_report(const Mat3& Q, double rho0) {
  const EndpointCenters c = endpoint_centers(Q, rho0);
  IndexReport r;
  r.L1 = sphere_distance(c.p1, c.q1);
  r.L2 = sphere_distance(c.p2, c.q2);
  r.D1 = sphere_distance(c.p1, c.q2);
  r.D2 = sphere_distance(c.p2, c.q1);
  r.Lbar1 = truncated_side(r.L1, rho0);
  r.Lbar2 = truncated_side(r.L2, rho0);
  r.Dbar1 = truncated_diagonal(r.D1, rho0);
  r.Dbar2 = truncated_diagonal(r.D2, rho0);
  const int lmin = std::min(r.Lbar1, r.Lbar2), lmax = std::max(r.Lbar1, r.Lbar2);
  const int dmin = std::min(r.Dbar1, r.Dbar2), dmax = std::max(r.Dbar1, r.Dbar2);
  if (lmin > dmax)
    r.n_Q = r.Lbar1;
  else if (dmin > lmax)
    r.n_Q = r.Dbar1;
  r.hyp = check_hypotheses(Q, rho0, default_delta_grid(rho0));
  return r;
}

std::vector<double> default_delta_grid(double rho0) { return {0.0, 1e-3 * rho0, 1e-2 * rho0}; }

bool spherical_convex(const std::vector<Vec3>& poly, double tol) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  Vec3 centroid = Vec3::Zero();
  for (const auto& v : poly) centroid += v;
  if (centroid.norm() < 1e-12) return false;
  centroid.normalize();
  for (const auto& v : poly)
    if (v.dot(centroid) <= tol) return false;
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 nrm = poly[i].cross(poly[(i + 1) % n]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == (i + 1) % n) continue;
      const double d = nrm.dot(poly[k]);
      if (std::abs(d) <= tol) return false;
      const int s = d > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) return false;
    }
  }
  return true;
}

namespace {

double distance_to_segment(const Vec3& a, const Vec3& b, const Vec3& x) {
  Vec3 nrm = a.cross(b);
  if (nrm.norm() < 1e-15) return std::min(sphere_distance(x, a), sphere_distance(x, b));
  nrm.normalize();
  Vec3 proj = x - x.dot(nrm) * nrm;
  if (proj.norm() > 1e-15) {
    proj.normalize();
    if (a.cross(proj).dot(nrm) >= 0 && proj.cross(b).dot(nrm) >= 0) return std::asin(std::min(1.0, std::abs(x.dot(nrm))));
  }
  return std::min(sphere_distance(x, a), sphere_distance(x, b));
}

}  // namespace

double distance_to_polygon(const std::vector<Vec3>& poly, const Vec3& x) {
  const std::size_t n = poly.size();
  Vec3 centroid = Vec3::Zero();
  for (const auto& v : poly) centroid += v;
  int orient = poly[0].cross(poly[1]).dot(centroid) > 0 ? 1 : -1;
  bool inside = x.dot(centroid) > 0;
  for (std::size_t i = 0; i < n && inside; ++i)
    if (orient * poly[i].cross(poly[(i + 1) % n]).dot(x) < 0) inside = false;
  if (inside) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) d = std::min(d, distance_to_segment(poly[i], poly[(i + 1) % n], x));
  return d;
}

HypothesisReport check_hypotheses(const Mat3& Q, double rho0, const std::vector<double>& delta_grid) {
  const EndpointCenters c = endpoint_centers(Q, rho0);
  HypothesisReport h;
  h.h1 = c.q1.y() > 0 && c.q2.y() > 0;
  h.h2 = std::min(sphere_distance(c.p1, c.q2), sphere_distance(c.p2, c.q1)) > 2 * rho0;
  h.h3 = spherical_convex({c.p1, c.q1, c.q2, c.p2});
  h.h4 = h.h3;
  if (!h.h3) return h;
  for (double delta : delta_grid) {
    const double rt = rho0 + delta;
    if (!(rt < kPi / 4)) {
      h.h4 = false;
      break;
    }
    const EndpointCenters ct = endpoint_centers(Q, rt);
    const std::vector<Vec3> quad = {ct.p1, ct.q1, ct.q2, ct.p2};
    if (!spherical_convex(quad)) {
      h.h4 = false;
      continue;
    }
    auto csc = shortest_csc(Frame::Identity(), Q, rt);
    if (!csc) {
      h.h4 = false;
      continue;
    }
    SampledCurve s = sample_uniform(csc->curve, 200);
    for (const auto& p : s.points) {
      const double excess = distance_to_polygon(quad, p) - (rt + 1e-9);
      h.h4_max_excess = std::max(h.h4_max_excess, excess);
      if (excess > 0) h.h4 = false;
    }
  }
  return h;
}

Mat3 y_rotation(double theta) {
  Mat3 r;
  r << std::cos(theta), 0, -std::sin(theta), 0, 1, 0, std::sin(theta), 0, std::cos(theta);
  return r;
}

namespace {

double arccot(double k) {
  if (std::isinf(k)) return k > 0 ? 0.0 : kPi;
  return kPi / 2 - std::atan(k);
}

}  // namespace

SymmetrizedBounds symmetrize_bounds(double kappa1, double kappa2, const Mat3& Q) {
  if (!(kappa1 < kappa2)) fail(ErrorKind::InvalidInput, "symmetrize_bounds: need kappa1 < kappa2");
  const double r1 = arccot(kappa1), r2 = arccot(kappa2);
  const double rb2 = 0.5 * (kPi - (r1 - r2));
  SymmetrizedBounds s;
  s.kappa0 = rb2 == 0.0 ? std::numeric_limits<double>::infinity() : std::cos(rb2) / std::sin(rb2);
  s.theta = r2 - rb2;
  s.Q = y_rotation(-s.theta) * Q * y_rotation(s.theta);
  return s;
}

Mat3 witness_matrix(double theta, double vartheta, double rho) {
  const Vec3 v(-std::cos(theta), 0, -std::sin(theta));
  const Vec3 p(std::cos(theta + vartheta), 0, std::sin(theta + vartheta));
  const Vec3 q(-std::sin(theta), 0, std::cos(theta));
  Mat3 m;
  m.col(0) = rotation_about_axis(v, rho) * p;
  m.col(1) = rotation_about_axis(v, rho + kPi / 2) * q;
  m.col(2) = m.col(0).cross(m.col(1));
  return m;
}

std::optional<TrivialWitness> trivial_witness(const Mat3& Q, double rho0) {
  check_rho0(rho0);
  const Vec3 x = Q.col(0), y = Q.col(1), n = Q.col(2);
  // The axis v(theta) = -(cos theta, 0, sin theta) already gives V(e1) = -e2;
  // V(Q e1) = Q e2 needs <v, Q e2> = 0 and <v, Q e3> > 0.
  std::vector<double> thetas;
  if (std::hypot(y.x(), y.z()) > 1e-12) {
    double t = std::atan2(-y.x(), y.z());
    if (t <= 0) t += kPi;
    if (t >= kPi) t -= kPi;
    thetas.push_back(t);
  } else {
    for (int k = 1; k < 3600; ++k) thetas.push_back(kPi * k / 3600.0);
  }
  for (double th : thetas) {
    if (!(th > rho0 && th < kPi - rho0)) continue;
    const Vec3 v(-std::cos(th), 0, -std::sin(th));
    if (v.dot(n) <= 0) continue;
    const Vec3 field = v.cross(x).normalized();
    if ((field - y).norm() > 1e-8) continue;
    const double dq = sphere_distance(v, x);
    if (!(dq > rho0 && dq < kPi - rho0)) continue;
    const double vt = kPi - dq;
    const Vec3 p(std::cos(th + vt), 0, std::sin(th + vt));
    const double rho = wrap_2pi(signed_angle(v, p, x));
    if (frame_distance(witness_matrix(th, vt, rho), Q) > 1e-8) continue;
    return TrivialWitness{th, vt, rho, v};
  }
  return std::nullopt;
}

}  // namespace geodubins
