#include "geodubins/sphere.hpp"

#include <cmath>

#include "geodubins/errors.hpp"

namespace geodubins {

Vec3 normalized(const Vec3& v) {
  double n = v.norm();
  if (!(n > 0.0)) fail(ErrorKind::InvalidInput, "cannot normalize a zero vector");
  return v / n;
}

bool is_unit(const Vec3& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

Mat3 rotation_about_axis(const Vec3& axis, double angle) {
  if (!is_unit(axis, 1e-9)) fail(ErrorKind::InvalidInput, "rotation axis is not a unit vector");
  Vec3 k = axis.normalized();
  Mat3 kx;
  kx << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
  return Mat3::Identity() + std::sin(angle) * kx + (1.0 - std::cos(angle)) * kx * kx;
}

bool is_rotation(const Mat3& m, double tol) {
  return (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(m.determinant() - 1.0) <= tol;
}

Mat3 reorthonormalize(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0) {
    Mat3 u = svd.matrixU();
    u.col(2) = -u.col(2);
    r = u * svd.matrixV().transpose();
  }
  return r;
}

// atan2 form: same value as the clamped arccos but accurate near 0 and pi.
double sphere_distance(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

Vec3 exp_map(const Vec3& p, const Vec3& w) {
  if (std::abs(p.dot(w)) > 1e-10) fail(ErrorKind::InvalidInput, "exp_map: w is not tangent at p");
  double n = w.norm();
  if (n == 0.0) return p;
  return std::cos(n) * p + std::sin(n) * (w / n);
}

Vec3 reference_meridian(const Vec3& axis) {
  Vec3 base = e1();
  Vec3 proj = base - axis.dot(base) * axis;
  if (proj.norm() < 1e-12) {
    base = e2();
    proj = base - axis.dot(base) * axis;
  }
  return proj.normalized();
}

PolarCoordinate polar_coords(const Vec3& axis, const Vec3& u) {
  Vec3 perp = u - axis.dot(u) * axis;
  if (perp.norm() < 1e-14) fail(ErrorKind::LongitudeUndefined, "polar_coords: point is a pole of the axis");
  Vec3 u1 = reference_meridian(axis);
  Vec3 u2 = axis.cross(u1);
  double phi = std::atan2(u.dot(u2), u.dot(u1));
  if (phi >= kPi) phi -= kTwoPi;
  return {sphere_distance(axis, u), phi, axis};
}

Vec3 from_polar(const PolarCoordinate& pc) {
  Vec3 u1 = reference_meridian(pc.axis);
  Vec3 u2 = pc.axis.cross(u1);
  return std::cos(pc.theta) * pc.axis + std::sin(pc.theta) * (std::cos(pc.phi) * u1 + std::sin(pc.phi) * u2);
}

double signed_angle(const Vec3& axis, const Vec3& a, const Vec3& b) {
  Vec3 pa = a - axis.dot(a) * axis;
  Vec3 pb = b - axis.dot(b) * axis;
  return std::atan2(axis.dot(pa.cross(pb)), pa.dot(pb));
}

double wrap_2pi(double a, double tol) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi - tol) w = 0.0;
  return w;
}

double wrap_pi(double a) {
  double w = std::fmod(a + kPi, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w - kPi;
}

}  // namespace geodubins
