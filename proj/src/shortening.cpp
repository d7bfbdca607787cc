#include "geodubins/shortening.hpp"

#include <algorithm>
#include <cmath>

#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/parallel.hpp"

namespace geodubins {

std::vector<double> dyadic_offsets(std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (int j = 1; out.size() < count; ++j) {
    const double den = std::ldexp(1.0, j);
    for (int i = 1; i <= (1 << j) && out.size() < count; ++i) out.push_back(i / den);
  }
  return out;
}

PassOutcome shorten_pass(const Curve& c, double rho0, double offset, double ell) {
  if (!(ell > 0 && ell <= kPi * std::sin(rho0) + 1e-15))
    fail(ErrorKind::InvalidInput, "shorten_pass: section length must lie in (0, pi sin rho0]");
  PassOutcome out;
  const double total = c.length();
  std::vector<double> cuts{0.0};
  if (offset * ell > 0 && offset * ell < total) cuts.push_back(offset * ell);
  while (cuts.back() + ell < total) cuts.push_back(cuts.back() + ell);
  cuts.push_back(total);

  const int ns = int(cuts.size()) - 1;
  std::vector<Curve> pieces(ns);
  std::vector<std::string> errors(ns);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic)
  for (int k = 0; k < ns; ++k) {
    Curve original = sub_curve(c, cuts[k], cuts[k + 1]);
    pieces[k] = original;
    if (cuts[k + 1] - cuts[k] < 1e-12) continue;
    try {
      PathSolution best = shortest_path(original.start, original.end_frame(), rho0);
      if (best.length() < original.length()) pieces[k] = best.curve();
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) {
      out.curve = c;
      out.aborted = true;
      out.diagnostic = e;
      return out;
    }
  }
  out.curve.start = c.start;
  for (const auto& p : pieces) out.curve.arcs.insert(out.curve.arcs.end(), p.arcs.begin(), p.arcs.end());
  out.curve = simplify(out.curve);
  return out;
}

ShorteningResult shorten(const Curve& c, double rho0, const ShorteningSchedule& schedule) {
  ShorteningResult r;
  r.curve = c;
  const double ell = schedule.section_length > 0 ? schedule.section_length : kPi * std::sin(rho0);
  const double l0 = c.length();
  r.trace.push_back({0, 0.0, l0});
  int pass = 0;
  for (int level = 1; pass < schedule.max_passes; ++level) {
    const double sweep_start = r.curve.length();
    const int count = 1 << std::min(level, 20);
    for (int i = 1; i <= count && pass < schedule.max_passes; ++i) {
      const double offset = double(i) / count;
      PassOutcome p = shorten_pass(r.curve, rho0, offset, ell);
      ++pass;
      if (!p.aborted) r.curve = std::move(p.curve);
      r.trace.push_back({pass, offset, r.curve.length()});
    }
    if (sweep_start - r.curve.length() < schedule.stall_tolerance * l0) {
      r.stalled = true;
      break;
    }
  }
  r.passes = pass;
  return r;
}

SegmentReport classify_segments(const Curve& c, double rho0, double tol) {
  SegmentReport rep;
  const Curve s = simplify(c);
  const double k0 = std::cos(rho0) / std::sin(rho0);
  auto label_of = [&](double k) {
    if (std::abs(k - k0) <= tol) return '+';
    if (std::abs(k + k0) <= tol) return '-';
    if (std::abs(k) <= tol) return '0';
    return '?';
  };
  std::vector<Segment> runs;
  for (const auto& a : s.arcs) {
    const double len = a.length();
    const char lab = label_of(a.curvature());
    if (!runs.empty() && runs.back().label == lab && lab != '?') {
      runs.back().length += len;
      continue;
    }
    runs.push_back({lab, a.curvature(), len, false, false});
  }
  // Runs shorter than tol are below the resolution of the labels (a finite
  // shortening run leaves kinks of this size); drop them and re-merge.
  for (const auto& r : runs) {
    if (r.length < tol && runs.size() > 1) {
      ++rep.negligible;
      continue;
    }
    if (!rep.segments.empty() && rep.segments.back().label == r.label && r.label != '?')
      rep.segments.back().length += r.length;
    else
      rep.segments.push_back(r);
  }
  const double min_run = kPi * std::sin(rho0) - tol;
  for (std::size_t i = 0; i < rep.segments.size(); ++i) {
    auto& seg = rep.segments[i];
    seg.interior = i > 0 && i + 1 < rep.segments.size();
    if (seg.label == '?') ++rep.unclassified;
    if (seg.interior && (seg.label == '+' || seg.label == '-') && seg.length < min_run) {
      seg.violation = true;
      ++rep.violations;
    }
  }
  return rep;
}

}  // namespace geodubins
