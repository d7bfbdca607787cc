#include <algorithm>
#include <cmath>

#include "geodubins/errors.hpp"
#include "geodubins/index.hpp"

namespace geodubins {

namespace {

bool admissible_radius(double r, double rho0) {
  return (r > rho0 && r < kPi / 2 - rho0) || (r > kPi / 2 + rho0 && r < kPi - rho0);
}

// Side for arc_from_frame that gives curvature of the requested sign.
int side_for(int sign, double r) { return r < kPi / 2 ? sign : -sign; }

}  // namespace

std::string CriticalSpec::sign_string() const {
  std::string s;
  for (int i = 0; i < junctions(); ++i) s += ((i % 2 == 0) == (leading_sign > 0)) ? '+' : '-';
  return s;
}

Curve generate_critical(const CriticalSpec& spec, const Frame& start) {
  if (spec.radii.empty()) fail(ErrorKind::InvalidInput, "critical curve needs at least one arc");
  if (spec.leading_sign != 1 && spec.leading_sign != -1) fail(ErrorKind::InvalidInput, "leading sign must be +1 or -1");
  for (double r : spec.radii)
    if (!admissible_radius(r, spec.rho0)) fail(ErrorKind::InvalidInput, "critical curve radius outside the admissible bands");
  if (!(spec.first_sweep > 0 && spec.first_sweep < kPi) || !(spec.last_sweep > 0 && spec.last_sweep < kPi))
    fail(ErrorKind::InvalidInput, "end arcs of a critical curve must sweep less than pi");
  Curve c;
  c.start = start;
  Frame f = start;
  const std::size_t k = spec.radii.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int sign = (i % 2 == 0) ? spec.leading_sign : -spec.leading_sign;
    const double sweep = i == 0 ? spec.first_sweep : (i + 1 == k ? spec.last_sweep : kPi);
    OrientedArc a = arc_from_frame(f, side_for(sign, spec.radii[i]), spec.radii[i], sweep);
    f = arc_frame(a, sweep);
    c.arcs.push_back(a);
  }
  return c;
}

CriticalValidation validate_critical(const Curve& c, const CriticalSpec& spec) {
  CriticalValidation v;
  const std::size_t k = c.arcs.size();
  v.radii_ok = k > 0 && std::all_of(c.arcs.begin(), c.arcs.end(),
                                    [&](const OrientedArc& a) { return admissible_radius(a.radius, spec.rho0); });
  v.sweeps_ok = k > 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = c.arcs[i];
    if (i == 0 || i + 1 == k)
      v.sweeps_ok = v.sweeps_ok && a.sweep > 0 && a.sweep < kPi;
    else
      v.sweeps_ok = v.sweeps_ok && std::abs(a.sweep - kPi) < 1e-12;
  }
  v.alternating = true;
  for (std::size_t i = 1; i < k; ++i)
    if (c.arcs[i].curvature() * c.arcs[i - 1].curvature() >= 0) v.alternating = false;

  // Centers on one great circle: fit the plane through the first two
  // distinct centers and measure the rest.
  v.centers_cocircular = true;
  v.cocircular_error = 0.0;
  if (k >= 3) {
    Vec3 nrm = Vec3::Zero();
    for (std::size_t i = 1; i < k && nrm.norm() < 1e-9; ++i) nrm = c.arcs[0].center.cross(c.arcs[i].center);
    if (nrm.norm() >= 1e-9) {
      nrm.normalize();
      for (const auto& a : c.arcs) v.cocircular_error = std::max(v.cocircular_error, std::abs(a.center.dot(nrm)));
      v.centers_cocircular = v.cocircular_error < 1e-9;
    }
  }

  // Self-intersection: non-neighbouring samples must stay apart.
  const double len = c.length();
  const std::size_t n = std::max<std::size_t>(200, std::size_t(len / 2e-3));
  SampledCurve s = sample_uniform(c, n);
  const double h = len / double(n - 1);
  v.simple = true;
  for (std::size_t i = 0; i < n && v.simple; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j - i < 10) continue;
      if ((s.points[i] - s.points[j]).norm() < h) {
        v.simple = false;
        break;
      }
    }
  }
  return v;
}

}  // namespace geodubins
