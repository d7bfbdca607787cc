#pragma once

#include <vector>

#include "geodubins/arcs.hpp"

namespace geodubins {

struct FamilyParams {
  Mat3 Q = Mat3::Identity();
  double rho0 = 0.2;
  double rho_tilde = 0.0;  // 0 selects the default
  int n = 0;               // n_Q
  double varsigma = 0.0;   // governing distance: min D_i (n even) or min L_i (n odd)
  double delta0 = 0.0;
};

// Fills n, varsigma, delta0 and the default rho_tilde = rho0 + min(delta0,
// rho0/10)/2. Throws InvalidInput when n_Q is undefined or (2n+2) rho_tilde
// >= varsigma.
FamilyParams make_family_params(const Mat3& Q, double rho0, double rho_tilde = 0.0);

// Paired control circles. Pair 1 pivots about the fixed points pt1, pt2;
// for i >= 2 one member (the mover) turns uniformly about pt1 on the circle
// of radius 2 i rho_tilde and the other follows on the circle of the same
// radius about pt2, always 2 rho_tilde away.
class ControlTrajectories {
public:
  explicit ControlTrajectories(const FamilyParams& params);

  const FamilyParams& params() const { return p_; }
  int pairs() const { return p_.n; }
  double rho() const { return p_.rho_tilde; }
  const Vec3& pt1() const { return pt1_; }
  const Vec3& pt2() const { return pt2_; }
  // Shortest CSC curve of radius rho_tilde from I to Q.
  const Curve& gamma0() const { return gamma0_; }

  Vec3 l(int i, double s) const;
  Vec3 r(int i, double s) const;
  // Frame whose left and right rho_tilde-circles are centered at l and r.
  Frame frame(int i, double s) const;
  // Center of the circle carrying l_i (or r_i).
  const Vec3& l_center(int i) const;
  const Vec3& r_center(int i) const;

  // Thresholds for alpha_i, 1 <= i < n: x1 = max{t <= x_i : d(r_i(x_i),
  // l_{i+1}(t)) = 2 rho}, x2 = min{t >= x_i : d(l_i(x_i), r_{i+1}(t)) = 2 rho}.
  std::pair<double, double> thresholds(int i, double x_i) const;

private:
  Vec3 mover(int i, double s) const;
  Vec3 follower(int i, double s) const;

  FamilyParams p_;
  Vec3 pt1_, pt2_;
  Curve gamma0_;
  std::vector<Vec3> mover0_;  // per pair, position at s = 0
  std::vector<int> branch_;   // follower branch sign per pair
};

enum class AlphaRegime { Arc, Low, Middle, High, Final };

struct AlphaSegment {
  Curve curve;
  AlphaRegime regime = AlphaRegime::Middle;
  double x1 = 0.0, x2 = 0.0;  // thresholds (Low/Middle/High only)
};

// alpha_0 is an arc of the pair-1 circles, alpha_n the shortest CSC curve to
// Q, and alpha_i (0 < i < n) depends on where x_{i+1} sits relative to the
// thresholds.
AlphaSegment alpha_segment(const ControlTrajectories& traj, int i, double x_i, double x_next);

Curve f_bar(const ControlTrajectories& traj, const std::vector<double>& x);
Curve f_bar(const FamilyParams& params, const std::vector<double>& x);

// f_bar over a list of parameter points; entries are independent.
std::vector<Curve> f_bar_grid(const ControlTrajectories& traj, const std::vector<std::vector<double>>& xs,
                              bool parallel = true);

// C1 distance between two curves sampled at n equal parameter steps.
double c1_distance(const Curve& a, const Curve& b, std::size_t n = 2001);

}  // namespace geodubins
