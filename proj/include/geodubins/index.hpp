#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geodubins/arcs.hpp"

namespace geodubins {

// Centers of the radius-rho tangent circles at the identity frame (p1 left,
// p2 right) and at Q (q1 left, q2 right).
struct EndpointCenters {
  Vec3 p1, p2, q1, q2;
};

EndpointCenters endpoint_centers(const Mat3& Q, double rho0);

struct HypothesisReport {
  bool h1 = false;  // q1, q2 strictly on the +e2 side
  bool h2 = false;  // min diagonal > 2 rho0
  bool h3 = false;  // quadrilateral p1 q1 q2 p2 convex
  bool h4 = false;  // shortest CSC stays near the quadrilateral for sampled radii
  double h4_max_excess = 0.0;  // worst distance beyond the allowed margin
};

struct IndexReport {
  double L1 = 0, L2 = 0, D1 = 0, D2 = 0;
  int Lbar1 = 0, Lbar2 = 0, Dbar1 = 0, Dbar2 = 0;
  std::optional<int> n_Q;
  HypothesisReport hyp;
};

int truncated_side(double L, double rho0);
int truncated_diagonal(double D, double rho0);
IndexReport index_report(const Mat3& Q, double rho0);

std::vector<double> default_delta_grid(double rho0);
HypothesisReport check_hypotheses(const Mat3& Q, double rho0, const std::vector<double>& delta_grid);

// Convex spherical polygon helpers (vertices in order, either orientation).
bool spherical_convex(const std::vector<Vec3>& poly, double tol = 1e-12);
double distance_to_polygon(const std::vector<Vec3>& poly, const Vec3& x);

// Alternating-curvature concatenation: arc i has radius radii[i]; interior
// arcs sweep pi; the curvature sign of arc 0 is `leading_sign`.
struct CriticalSpec {
  double rho0 = 0.2;
  std::vector<double> radii;
  int leading_sign = 1;
  double first_sweep = kPi / 2;
  double last_sweep = kPi / 2;

  int junctions() const { return int(radii.size()) - 1; }
  // One sign per junction: the sign of the arc before it.
  std::string sign_string() const;
};

struct CriticalValidation {
  bool radii_ok = false;
  bool sweeps_ok = false;
  bool alternating = false;
  bool centers_cocircular = false;
  bool simple = false;
  double cocircular_error = 0.0;

  bool valid() const { return radii_ok && sweeps_ok && alternating && centers_cocircular && simple; }
};

Curve generate_critical(const CriticalSpec& spec, const Frame& start = Frame::Identity());
CriticalValidation validate_critical(const Curve& c, const CriticalSpec& spec);

// Bound symmetrization: maps [kappa1, kappa2] to [-kappa0, kappa0] and
// conjugates Q by the rotation about e2.
struct SymmetrizedBounds {
  double kappa0;
  double theta;
  Mat3 Q;
};
Mat3 y_rotation(double theta);
SymmetrizedBounds symmetrize_bounds(double kappa1, double kappa2, const Mat3& Q);

struct TrivialWitness {
  double theta, vartheta, rho;
  Vec3 axis;
};
Mat3 witness_matrix(double theta, double vartheta, double rho);
std::optional<TrivialWitness> trivial_witness(const Mat3& Q, double rho0);

}  // namespace geodubins
