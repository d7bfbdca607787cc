#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geodubins/arcs.hpp"

namespace geodubins {

// Arc - geodesic - arc. Sides are +1 (left, counter-clockwise) or -1 (right,
// clockwise); `choice` picks one of the two common tangent geodesics.
struct CscSolution {
  int first_side = 1;
  int last_side = 1;
  int choice = 1;
  double alpha = 0.0;  // first-arc angle
  double theta = 0.0;  // geodesic angle
  double beta = 0.0;   // last-arc angle
  double length = 0.0;
  Curve curve;

  std::string case_id() const;
};

// Three arcs of radius rho; outer arcs share `side`, the middle arc turns the
// other way.
struct CccSolution {
  int side = 1;
  int choice = 1;
  double alpha = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  double length = 0.0;
  bool long_middle = false;  // lambda > pi, kept as a diagnostic
  Curve curve;

  std::string case_id() const;
};

struct PathSolution {
  std::variant<CscSolution, CccSolution> value;

  bool is_csc() const { return std::holds_alternative<CscSolution>(value); }
  double length() const;
  const Curve& curve() const;
  std::string case_id() const;
};

std::vector<CscSolution> csc_candidates(const Frame& P, const Frame& Q, double rho);
std::vector<CccSolution> ccc_candidates(const Frame& P, const Frame& Q, double rho);
PathSolution shortest_path(const Frame& P, const Frame& Q, double rho);
std::optional<CscSolution> shortest_csc(const Frame& P, const Frame& Q, double rho);

// CSC angles from the trigonometric closed form, relative frame R = P^T Q.
struct CscClosedForm {
  bool feasible = false;
  double alpha = 0.0, theta = 0.0, beta = 0.0, length = 0.0;
};
CscClosedForm csc_closed_form(const Frame& R, double rho, int first_side, int last_side, int choice);

// Dense first-arc sweep with bisection on the tangency residual; returns the
// shortest CSC/CCC length found, or a negative value when nothing was found.
double sweep_oracle(const Frame& P, const Frame& Q, double rho, int grid = 4096);
double sweep_oracle_serial(const Frame& P, const Frame& Q, double rho, int grid = 4096);

}  // namespace geodubins
