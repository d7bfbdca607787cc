#pragma once

#include <Eigen/Dense>

namespace geodubins {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
// Columns are (position, tangent, normal = position x tangent).
using Frame = Eigen::Matrix3d;

inline Vec3 e1() { return Vec3::UnitX(); }
inline Vec3 e2() { return Vec3::UnitY(); }
inline Vec3 e3() { return Vec3::UnitZ(); }

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

Vec3 normalized(const Vec3& v);
bool is_unit(const Vec3& v, double tol = 1e-10);

// Right-hand rotation by angle about a unit axis.
Mat3 rotation_about_axis(const Vec3& axis, double angle);
bool is_rotation(const Mat3& m, double tol = 1e-10);
// Nearest rotation (polar factor); used after long products.
Mat3 reorthonormalize(const Mat3& m);

double sphere_distance(const Vec3& a, const Vec3& b);
Vec3 exp_map(const Vec3& p, const Vec3& w);

// Unit vector orthogonal to axis, used as the zero-longitude direction.
Vec3 reference_meridian(const Vec3& axis);

struct PolarCoordinate {
  double theta;  // colatitude in [0, pi]
  double phi;    // longitude in [-pi, pi)
  Vec3 axis;
};

PolarCoordinate polar_coords(const Vec3& axis, const Vec3& u);
Vec3 from_polar(const PolarCoordinate& pc);

inline Frame make_frame(const Vec3& pos, const Vec3& tan) {
  Frame f;
  f.col(0) = pos;
  f.col(1) = tan;
  f.col(2) = pos.cross(tan);
  return f;
}

// Max absolute entry difference.
inline double frame_distance(const Mat3& a, const Mat3& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Signed angle from a to b seen from the tip of axis (all three unit; a, b
// need not be orthogonal to axis).
double signed_angle(const Vec3& axis, const Vec3& a, const Vec3& b);

// Wrap to [0, 2pi); values within tol of 2pi map to 0.
double wrap_2pi(double a, double tol = 1e-11);
// Wrap to [-pi, pi).
double wrap_pi(double a);

}  // namespace geodubins
