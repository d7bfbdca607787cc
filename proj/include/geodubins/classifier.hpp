#pragma once

#include <string>
#include <vector>

#include "geodubins/arcs.hpp"
#include "geodubins/index.hpp"

namespace geodubins {

struct AxisResult {
  Vec3 v = Vec3::UnitY();
  double m = 0.0;  // min over the curve of <t(s), v>
  bool hemispheric = false;
  bool constrained = false;  // optimum sits on the boundary of the admissible quadrilateral
  bool degenerate = false;   // maximin <= 0: the maximizer need not be unique
};

// Maximizes min_s <t(s), v> over v with <v, p_i> <= 0 and <v, q_i> >= 0.
AxisResult hemispheric_axis(const SampledCurve& c, const EndpointCenters& centers);
AxisResult hemispheric_axis_serial(const SampledCurve& c, const EndpointCenters& centers);

// Region between two v-meridians: longitudes about v in [lo, hi], measured
// from u1 towards u2 (u1 points at the middle of the shortest curve).
struct Lune {
  Vec3 v, u1, u2;
  double lo = 0.0, hi = 0.0;
  bool from_centers = true;  // false when a side had no bounding center
  double longitude(const Vec3& x) const;
};

Lune make_lune(const Vec3& v, const EndpointCenters& centers, const SampledCurve& shortest);
double distance_to_lune(const Lune& lune, const Vec3& x);

// Band kinds in slot order: tangent band +, position band +, tangent band -,
// position band -.
enum class BandKind { TangentPlus = 0, PositionPlus = 1, TangentMinus = 2, PositionMinus = 3 };

struct BandRun {
  BandKind kind;
  std::size_t first, last;  // sample indices, inclusive
  double value;             // tangent-trace length or enclosed area
  int slot;                 // index into x
};

struct ExtractionResult {
  std::vector<double> x;
  std::vector<BandRun> runs;
  double epsilon = 0.0;
  AxisResult axis;
  Lune lune;
  double max_lune_distance = 0.0;
  bool in_c0 = false;
};

// Requires epsilon < rho0/8 and sample spacing (positions and tangents) at
// most epsilon/4.
ExtractionResult extract_sequence(const SampledCurve& c, const Mat3& Q, double rho0, double epsilon);

// Samples the curve finely enough for extract_sequence.
SampledCurve sample_for_extraction(const Curve& c, double epsilon);
ExtractionResult classify_curve(const Curve& c, const Mat3& Q, double rho0, double epsilon);
// Corpus classification; entries are independent.
std::vector<ExtractionResult> classify_corpus(const std::vector<Curve>& curves, const Mat3& Q, double rho0,
                                              double epsilon, bool parallel = true);

int epsilon_index(const std::vector<double>& x);

// y_1..y_n from good subsequences (fast search) and from literal enumeration
// of all index functions (supports of size <= 16).
std::vector<double> g_coordinates(const std::vector<double>& x, int n);
std::vector<double> g_coordinates_exhaustive(const std::vector<double>& x, int n);

// Ball-to-sphere projection p; a has n entries, result n + 1.
std::vector<double> project_to_sphere(const std::vector<double>& a);

struct GMapResult {
  std::vector<double> y;
  std::vector<double> point;  // on the n-sphere
  bool in_c0 = false;
  int index = 0;
};

GMapResult g_map(const ExtractionResult& e, int n_Q, double r0);
GMapResult g_map(const Curve& c, const Mat3& Q, double rho0, double epsilon, double r0 = 1.0);

// Half the smallest |y| over curves of the corpus with positive index.
double estimate_r0(const std::vector<Curve>& boundary_corpus, const Mat3& Q, double rho0, double epsilon);

}  // namespace geodubins
