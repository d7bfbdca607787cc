#include "geodubins/classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/parallel.hpp"

namespace geodubins {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Minimum-norm point of the convex hull of pts (Wolfe's algorithm).
Vec3 min_norm_point(const std::vector<Vec3>& pts) {
  std::size_t j0 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].squaredNorm() < pts[j0].squaredNorm()) j0 = i;
  std::vector<std::size_t> S{j0};
  std::vector<double> w{1.0};
  Vec3 x = pts[j0];
  for (int major = 0; major < 500; ++major) {
    if (x.squaredNorm() < 1e-24) return Vec3::Zero();
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = x.dot(pts[i]);
      if (d < best) best = d, j = i;
    }
    if (x.squaredNorm() - best <= 1e-15) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);
    w.push_back(0.0);
    for (int minor = 0; minor < 20; ++minor) {
      const int k = int(S.size());
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k + 1, k + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) A(a, b) = pts[S[a]].dot(pts[S[b]]);
        A(a, k) = A(k, a) = 1.0;
      }
      rhs(k) = 1.0;
      const Eigen::VectorXd alpha = A.fullPivLu().solve(rhs).head(k);
      if (alpha.minCoeff() > 1e-14) {
        for (int a = 0; a < k; ++a) w[a] = alpha(a);
        break;
      }
      double theta = 1.0;
      for (int a = 0; a < k; ++a)
        if (alpha(a) <= 1e-14) theta = std::min(theta, w[a] / (w[a] - alpha(a)));
      std::vector<std::size_t> S2;
      std::vector<double> w2;
      for (int a = 0; a < k; ++a) {
        const double wa = theta * alpha(a) + (1 - theta) * w[a];
        if (wa > 1e-14) S2.push_back(S[a]), w2.push_back(wa);
      }
      if (S2.empty()) S2.push_back(j), w2.push_back(1.0);
      double sum = 0;
      for (double v : w2) sum += v;
      for (double& v : w2) v /= sum;
      S = std::move(S2);
      w = std::move(w2);
    }
    x.setZero();
    for (std::size_t a = 0; a < S.size(); ++a) x += w[a] * pts[S[a]];
  }
  return x;
}

std::array<Vec3, 4> region_normals(const EndpointCenters& c) { return {-c.p1, -c.p2, c.q1, c.q2}; }

bool feasible(const std::array<Vec3, 4>& a, const Vec3& v, double tol = 1e-12) {
  for (const auto& n : a)
    if (n.dot(v) < -tol) return false;
  return true;
}

double min_dot(const std::vector<Vec3>& t, const Vec3& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& x : t) m = std::min(m, x.dot(v));
  return m;
}

double objective(const std::vector<Vec3>& t, const std::array<Vec3, 4>& a, const Vec3& v) {
  return feasible(a, v) ? min_dot(t, v) : kNegInf;
}

std::vector<Vec3> decimate(const std::vector<Vec3>& t, std::size_t cap) {
  if (t.size() <= cap) return t;
  std::vector<Vec3> out;
  out.reserve(cap);
  for (std::size_t k = 0; k < cap; ++k) out.push_back(t[k * (t.size() - 1) / (cap - 1)]);
  return out;
}

// About 2 degree spacing.
std::vector<Vec3> fibonacci_grid() {
  const double spacing = 2.0 * kPi / 180.0;
  const int n = int(std::ceil(4 * kPi / (spacing * spacing)));
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> g(n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n, r = std::sqrt(std::max(0.0, 1 - z * z));
    g[i] = Vec3(r * std::cos(golden * i), r * std::sin(golden * i), z);
  }
  return g;
}

// Maximizes along the great circle orthogonal to a[j], restricted to the
// quadrilateral.
std::pair<Vec3, double> boundary_search(const std::vector<Vec3>& t, const std::vector<Vec3>& coarse,
                                        const std::array<Vec3, 4>& a, int j, bool parallel) {
  const Vec3 n = a[j].normalized();
  const Vec3 b1 = reference_meridian(n), b2 = n.cross(b1);
  auto at = [&](double phi) { return Vec3(std::cos(phi) * b1 + std::sin(phi) * b2); };
  const int steps = 4096;
  std::vector<double> vals(steps);
#pragma omp parallel for num_threads(thread_count()) if (parallel)
  for (int k = 0; k < steps; ++k) vals[k] = objective(coarse, a, at(kTwoPi * k / steps));
  std::vector<int> order(steps);
  for (int k = 0; k < steps; ++k) order[k] = k;
  std::partial_sort(order.begin(), order.begin() + 3, order.end(), [&](int x, int y) { return vals[x] > vals[y]; });
  Vec3 best_v = at(kTwoPi * order[0] / steps);
  double best = objective(t, a, best_v);
  for (int r = 0; r < 3; ++r) {
    if (vals[order[r]] == kNegInf) continue;
    const double h = 1.5 * kTwoPi / steps, c = kTwoPi * order[r] / steps;
    double lo = c - h, hi = c + h;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = objective(t, a, at(x1)), f2 = objective(t, a, at(x2));
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        lo = x1, x1 = x2, f1 = f2, x2 = lo + g * (hi - lo), f2 = objective(t, a, at(x2));
      } else {
        hi = x2, x2 = x1, f2 = f1, x1 = hi - g * (hi - lo), f1 = objective(t, a, at(x1));
      }
    }
    const Vec3 v = at(0.5 * (lo + hi));
    const double f = objective(t, a, v);
    if (f > best) best = f, best_v = v;
  }
  return {best_v, best};
}

// Compass search on the sphere with eight directions per step; the step
// grows after a success and shrinks after a failure.
std::pair<Vec3, double> local_refine(const std::vector<Vec3>& t, const std::array<Vec3, 4>& a, Vec3 v) {
  double f = objective(t, a, v);
  double h = 2.0 * kPi / 180.0;
  for (int it = 0; it < 4000 && h > 1e-12; ++it) {
    const Vec3 b1 = reference_meridian(v), b2 = v.cross(b1);
    bool improved = false;
    for (int d = 0; d < 8; ++d) {
      const double ang = kPi * d / 4;
      const Vec3 w = (v + h * (std::cos(ang) * b1 + std::sin(ang) * b2)).normalized();
      const double fw = objective(t, a, w);
      if (fw > f) {
        f = fw, v = w, improved = true;
        break;
      }
    }
    h = improved ? std::min(2.0 * h, 0.1) : 0.5 * h;
  }
  return {v, f};
}

AxisResult axis_impl(const SampledCurve& c, const EndpointCenters& centers, bool parallel) {
  if (c.size() < 2) fail(ErrorKind::InvalidInput, "hemispheric_axis: curve needs at least two samples");
  const auto& t = c.tangents;
  const auto a = region_normals(centers);
  AxisResult r;
  const Vec3 x = min_norm_point(t);
  bool done = false;
  if (x.norm() > 1e-9) {
    const Vec3 v = x.normalized();
    if (feasible(a, v)) {
      r.v = v;
      r.m = min_dot(t, v);
      done = true;
    }
  }
  if (!done) {
    const std::vector<Vec3> coarse = decimate(t, 256);
    std::vector<std::pair<Vec3, double>> cands;
    for (int j = 0; j < 4; ++j) cands.push_back(boundary_search(t, coarse, a, j, parallel));
    r.constrained = true;
    if (x.norm() <= 1e-9) {
      // Degenerate maximin: seed a local search from the best grid points.
      const std::vector<Vec3> grid = fibonacci_grid();
      std::vector<double> vals(grid.size());
#pragma omp parallel for num_threads(thread_count()) if (parallel)
      for (long k = 0; k < long(grid.size()); ++k) vals[k] = objective(coarse, a, grid[k]);
      std::vector<std::size_t> order(grid.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::partial_sort(order.begin(), order.begin() + 4, order.end(),
                        [&](std::size_t p, std::size_t q) { return vals[p] > vals[q]; });
      for (int k = 0; k < 4; ++k)
        if (vals[order[k]] > kNegInf) cands.push_back(local_refine(t, a, grid[order[k]]));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < cands.size(); ++k)
      if (cands[k].second > cands[best].second) best = k;
    r.v = cands[best].first;
    r.m = cands[best].second;
    if (r.m == kNegInf) fail(ErrorKind::Infeasible, "hemispheric_axis: admissible axis region is empty");
    if (x.norm() <= 1e-9 && !feasible(a, r.v, 0.0)) r.constrained = true;
  }
  r.degenerate = r.m <= 1e-12;
  double ymin = std::numeric_limits<double>::infinity();
  for (const auto& p : c.points) ymin = std::min(ymin, p.y());
  r.hemispheric = r.m >= -1e-9 && ymin >= -1e-12;
  return r;
}

// Signed area between a sampled arc and the circle <x, w> = s0, by
// Archimedes' projection (area element dz dpsi about w).
double band_area(const SampledCurve& c, std::size_t first, std::size_t last, const Vec3& w, const Vec3& b1,
                 double s0) {
  const Vec3 b2 = w.cross(b1);
  double area = 0.0;
  double prev_psi = std::atan2(c.points[first].dot(b2), c.points[first].dot(b1));
  double prev_z = c.points[first].dot(w);
  for (std::size_t i = first + 1; i <= last; ++i) {
    const double psi = std::atan2(c.points[i].dot(b2), c.points[i].dot(b1));
    const double z = c.points[i].dot(w);
    area += (0.5 * (z + prev_z) - s0) * wrap_pi(psi - prev_psi);
    prev_psi = psi;
    prev_z = z;
  }
  return std::abs(area);
}

double trace_length(const SampledCurve& c, std::size_t first, std::size_t last) {
  double len = 0.0;
  for (std::size_t i = first + 1; i <= last; ++i) len += sphere_distance(c.tangents[i - 1], c.tangents[i]);
  return len;
}

}  // namespace

AxisResult hemispheric_axis(const SampledCurve& c, const EndpointCenters& centers) {
  return axis_impl(c, centers, true);
}

AxisResult hemispheric_axis_serial(const SampledCurve& c, const EndpointCenters& centers) {
  return axis_impl(c, centers, false);
}

double Lune::longitude(const Vec3& x) const { return std::atan2(x.dot(u2), x.dot(u1)); }

Lune make_lune(const Vec3& v, const EndpointCenters& centers, const SampledCurve& shortest) {
  Lune l;
  l.v = v.normalized();
  const Vec3 mid = shortest.points[shortest.size() / 2];
  Vec3 perp = mid - mid.dot(l.v) * l.v;
  if (perp.norm() < 1e-12) perp = reference_meridian(l.v);
  l.u1 = perp.normalized();
  l.u2 = l.u1.cross(l.v);
  double gmin = 0.0, gmax = 0.0;
  for (const auto& p : shortest.points) {
    const double psi = l.longitude(p);
    gmin = std::min(gmin, psi);
    gmax = std::max(gmax, psi);
  }
  l.lo = -std::numeric_limits<double>::infinity();
  l.hi = std::numeric_limits<double>::infinity();
  bool have_lo = false, have_hi = false;
  double lo = 0.0, hi = 0.0;
  for (const Vec3& c : {centers.p1, centers.p2, centers.q1, centers.q2}) {
    const double psi = l.longitude(c);
    if (psi <= gmin) lo = have_lo ? std::min(lo, psi) : psi, have_lo = true;
    if (psi >= gmax) hi = have_hi ? std::max(hi, psi) : psi, have_hi = true;
  }
  l.lo = have_lo ? lo : gmin;
  l.hi = have_hi ? hi : gmax;
  l.from_centers = have_lo && have_hi;
  return l;
}

double distance_to_lune(const Lune& lune, const Vec3& x) {
  const double psi = lune.longitude(x);
  if (psi >= lune.lo && psi <= lune.hi) return 0.0;
  const double theta = sphere_distance(lune.v, x);
  const double d_hi = wrap_2pi(psi - lune.hi), d_lo = wrap_2pi(lune.lo - psi);
  const double delta = std::min(d_hi, d_lo);
  if (delta <= kPi / 2) return std::asin(std::clamp(std::sin(theta) * std::sin(delta), 0.0, 1.0));
  return std::min(theta, kPi - theta);
}

ExtractionResult extract_sequence(const SampledCurve& c, const Mat3& Q, double rho0, double epsilon) {
  if (!(epsilon > 0 && epsilon < rho0 / 8)) fail(ErrorKind::InvalidInput, "extract_sequence: need 0 < epsilon < rho0/8");
  if (c.size() < 2) fail(ErrorKind::InvalidInput, "extract_sequence: curve needs at least two samples");
  double step = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i)
    step = std::max({step, sphere_distance(c.points[i - 1], c.points[i]),
                     sphere_distance(c.tangents[i - 1], c.tangents[i])});
  if (step > epsilon / 4)
    fail(ErrorKind::Resolution, "extract_sequence: sample spacing " + std::to_string(step) + " exceeds epsilon/4");

  ExtractionResult r;
  r.epsilon = epsilon;
  const EndpointCenters centers = endpoint_centers(Q, rho0);
  r.axis = hemispheric_axis(c, centers);
  const auto g0 = shortest_csc(Frame::Identity(), Q, rho0);
  if (!g0) fail(ErrorKind::Infeasible, "extract_sequence: no CSC curve between I and Q");
  r.lune = make_lune(r.axis.v, centers, sample_by_step(g0->curve, 1e-3));
  const Lune& L = r.lune;

  // Membership: 0 none, else BandKind + 1.
  const std::size_t n = c.size();
  std::vector<int> pos(n, 0), tan(n, 0);
  const double sin_eps = std::sin(epsilon);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = distance_to_lune(L, c.points[i]);
    r.max_lune_distance = std::max(r.max_lune_distance, d);
    if (d >= rho0 - epsilon)
      pos[i] = 1 + int(c.points[i].dot(L.u2) >= 0 ? BandKind::PositionPlus : BandKind::PositionMinus);
    if (c.tangents[i].dot(L.v) <= sin_eps)
      tan[i] = 1 + int(c.tangents[i].dot(L.u2) >= 0 ? BandKind::TangentPlus : BandKind::TangentMinus);
  }
  r.in_c0 = r.axis.hemispheric && r.max_lune_distance <= rho0 + 1e-12;

  const double s0 = std::sin(rho0 - epsilon);
  const Vec3 w_hi = -std::sin(L.hi) * L.u1 + std::cos(L.hi) * L.u2;
  const Vec3 w_lo = std::sin(L.lo) * L.u1 - std::cos(L.lo) * L.u2;
  std::vector<BandRun> runs;
  auto collect = [&](const std::vector<int>& mem) {
    std::size_t i = 0;
    while (i < n) {
      if (mem[i] == 0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && mem[j + 1] == mem[i]) ++j;
      const BandKind kind = BandKind(mem[i] - 1);
      double value;
      if (kind == BandKind::TangentPlus || kind == BandKind::TangentMinus)
        value = trace_length(c, i, j);
      else
        value = band_area(c, i, j, kind == BandKind::PositionPlus ? w_hi : w_lo, L.v, s0);
      if (value > 0.0) runs.push_back({kind, i, j, value, -1});
      i = j + 1;
    }
  };
  collect(tan);
  collect(pos);
  std::sort(runs.begin(), runs.end(), [](const BandRun& a, const BandRun& b) {
    if (a.first != b.first) return a.first < b.first;
    return (int(a.kind) % 2) < (int(b.kind) % 2);
  });

  int cursor = -1;
  for (auto& run : runs) {
    const int kind = int(run.kind);
    if (cursor >= 0 && cursor % 4 == kind) {
      run.slot = cursor;
    } else {
      int s = cursor + 1;
      while (s % 4 != kind) ++s;
      run.slot = cursor = s;
    }
  }
  const int slots = cursor < 0 ? 4 : 4 * (cursor / 4 + 1);
  r.x.assign(slots, 0.0);
  for (const auto& run : runs) r.x[run.slot] += run.value;
  r.runs = std::move(runs);
  return r;
}

SampledCurve sample_for_extraction(const Curve& c, double epsilon) {
  const double k = c.max_abs_curvature();
  return sample_by_step(c, 0.9 * epsilon / (4.0 * std::sqrt(1.0 + k * k)));
}

ExtractionResult classify_curve(const Curve& c, const Mat3& Q, double rho0, double epsilon) {
  return extract_sequence(sample_for_extraction(c, epsilon), Q, rho0, epsilon);
}

std::vector<ExtractionResult> classify_corpus(const std::vector<Curve>& curves, const Mat3& Q, double rho0,
                                              double epsilon, bool parallel) {
  std::vector<ExtractionResult> out(curves.size());
  std::vector<std::string> errors(curves.size());
  std::vector<ErrorKind> kinds(curves.size(), ErrorKind::InvalidInput);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) if (parallel)
  for (long i = 0; i < long(curves.size()); ++i) {
    try {
      out[i] = classify_curve(curves[i], Q, rho0, epsilon);
    } catch (const Error& e) {
      errors[i] = e.what();
      kinds[i] = e.kind();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) fail(kinds[i], "classify_corpus: curve " + std::to_string(i) + ": " + errors[i]);
  return out;
}

int epsilon_index(const std::vector<double>& x) {
  int k = -1;
  for (int i = 0; i < int(x.size()); ++i)
    if (x[i] != 0.0) k = i;
  if (k < 0) return 0;
  const int half = (k + 1) / 2;
  return (x[0] != 0.0 || (x.size() > 1 && x[1] != 0.0)) ? half : half - 1;
}

}  // namespace geodubins
