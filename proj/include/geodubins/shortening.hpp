#pragma once

#include <string>
#include <vector>

#include "geodubins/arcs.hpp"

namespace geodubins {

struct ShorteningSchedule {
  double section_length = 0.0;  // 0 means pi sin(rho0)
  int max_passes = 10000;
  double stall_tolerance = 1e-10;  // relative to the initial length
};

// 1/2, 1, 1/4, 2/4, 3/4, 1, 1/8, ... (first `count` terms).
std::vector<double> dyadic_offsets(std::size_t count);

struct PassOutcome {
  Curve curve;
  bool aborted = false;
  std::string diagnostic;
};

// Splits the curve into a first section of length offset*ell, middle sections
// of length ell and a remainder, and replaces each by a shortest path.
PassOutcome shorten_pass(const Curve& c, double rho0, double offset, double ell);

struct TraceEntry {
  int pass;
  double offset;
  double length;
};

struct ShorteningResult {
  Curve curve;
  std::vector<TraceEntry> trace;  // entry 0 is the input
  int passes = 0;
  bool stalled = false;
};

ShorteningResult shorten(const Curve& c, double rho0, const ShorteningSchedule& schedule);

struct Segment {
  char label;  // '+', '-', '0', or '?' when the curvature is unclassifiable
  double curvature;
  double length;
  bool interior;
  bool violation;  // interior turning run shorter than pi sin(rho0) - tol
};

struct SegmentReport {
  std::vector<Segment> segments;
  int unclassified = 0;
  int negligible = 0;  // runs shorter than tol, dropped before labeling
  int violations = 0;
};

SegmentReport classify_segments(const Curve& c, double rho0, double tol);

}  // namespace geodubins
