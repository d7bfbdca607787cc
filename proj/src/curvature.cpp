#include <algorithm>
#include <cmath>

#include "geodubins/arcs.hpp"
#include "geodubins/errors.hpp"

namespace geodubins {

std::vector<double> default_probe_radii(double r_min, std::size_t count) {
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = r_min + (kPi - 2 * r_min) * double(i) / double(count - 1);
  return r;
}

namespace {

// True when no window sample enters the open disc of radius r about the
// tangent circle center on the given side.
bool circle_clear(const SampledCurve& c, std::size_t lo, std::size_t hi, std::size_t i, int side, double r) {
  const Vec3& g = c.points[i];
  Vec3 n = g.cross(c.tangents[i]);
  Vec3 center = std::cos(r) * g + side * std::sin(r) * n;
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j == i) continue;
    if (sphere_distance(c.points[j], center) < r - 1e-13) return false;
  }
  return true;
}

// Largest clear radius on one side: grid bracket then bisection.
double clear_radius(const SampledCurve& c, std::size_t lo, std::size_t hi, std::size_t i, int side,
                    const std::vector<double>& radii, bool& saturated) {
  saturated = false;
  if (!circle_clear(c, lo, hi, i, side, radii.front())) {
    saturated = true;
    return radii.front();
  }
  std::size_t k = 0;
  while (k + 1 < radii.size() && circle_clear(c, lo, hi, i, side, radii[k + 1])) ++k;
  if (k + 1 == radii.size()) {
    saturated = true;
    return radii.back();
  }
  double a = radii[k], b = radii[k + 1];
  for (int it = 0; it < 40; ++it) {
    double m = 0.5 * (a + b);
    if (circle_clear(c, lo, hi, i, side, m))
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

CurvatureBounds curvature_bounds(const SampledCurve& c, double t, const std::vector<double>& probe_radii,
                                 int window) {
  if (c.size() < 3) fail(ErrorKind::Resolution, "curvature_bounds needs at least three samples");
  if (probe_radii.empty()) fail(ErrorKind::InvalidInput, "empty probe radius grid");
  std::vector<double> radii = probe_radii;
  std::sort(radii.begin(), radii.end());
  auto it = std::lower_bound(c.t.begin(), c.t.end(), t);
  std::size_t i = std::size_t(it - c.t.begin());
  if (i == c.size()) i = c.size() - 1;
  if (i > 0 && std::abs(c.t[i - 1] - t) < std::abs(c.t[i] - t)) --i;
  std::size_t lo = i >= std::size_t(window) ? i - window : 0;
  std::size_t hi = std::min(c.size() - 1, i + window);
  double step = 0.0;
  for (std::size_t j = lo + 1; j <= hi; ++j) step = std::max(step, sphere_distance(c.points[j - 1], c.points[j]));
  if (step > radii.front() / 10) fail(ErrorKind::Resolution, "sampling too coarse for the smallest probe radius");

  CurvatureBounds b;
  double rl = clear_radius(c, lo, hi, i, 1, radii, b.plus_saturated);
  double rr = clear_radius(c, lo, hi, i, -1, radii, b.minus_saturated);
  b.kappa_plus = std::cos(rl) / std::sin(rl);
  b.kappa_minus = -std::cos(rr) / std::sin(rr);
  return b;
}

}  // namespace geodubins
