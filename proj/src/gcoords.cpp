#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "geodubins/classifier.hpp"
#include "geodubins/errors.hpp"

namespace geodubins {

namespace {

// A good subsequence is identified by where its nonzero entries come from:
// (position in z, index in x), in increasing position.
using Placement = std::vector<std::pair<int, int>>;

struct Accumulator {
  const std::vector<double>& x;
  std::map<Placement, bool> seen;

  void add(const Placement& pl) { seen.emplace(pl, true); }

  std::vector<double> sums(int n) const {
    std::vector<double> y(n, 0.0);
    for (const auto& [pl, unused] : seen) {
      if (pl.empty()) continue;
      const int last = pl.back().first;
      const bool plus = pl.front().first <= 1;
      const int len = (last + 1) / 2 - (plus ? 0 : 1);
      if (len < 1 || len > n) continue;
      double prod = plus ? 1.0 : -1.0;
      for (const auto& [pos, idx] : pl) prod *= x[idx];
      y[len - 1] += prod;
    }
    return y;
  }
};

int last_support(const std::vector<double>& x) {
  int k = -1;
  for (int i = 0; i < int(x.size()); ++i)
    if (x[i] != 0.0) k = i;
  return k;
}

// Depth-first search over index functions k(i) = i + 4 m(i), m
// non-decreasing. For a zero entry only the smallest admissible m is taken:
// every completion of a larger choice is also a completion of the smallest.
void search(const std::vector<double>& x, int K, int i, int m_lo, int zero_run, Placement& pl, Accumulator& acc) {
  if (i >= K) {
    acc.add(pl);
    return;
  }
  for (int m = m_lo; i + 4 * m < K; ++m) {
    if (x[i + 4 * m] == 0.0) continue;
    pl.emplace_back(i, i + 4 * m);
    search(x, K, i + 1, m, 0, pl, acc);
    pl.pop_back();
  }
  // Zero at position i.
  int mz = m_lo;
  while (i + 4 * mz < K && x[i + 4 * mz] != 0.0) ++mz;
  const int run = i >= 1 ? zero_run + 1 : 0;
  if (run >= 3) {
    acc.add(pl);  // everything after must vanish
    return;
  }
  search(x, K, i + 1, mz, run, pl, acc);
}

}  // namespace

std::vector<double> g_coordinates(const std::vector<double>& x, int n) {
  if (n < 0) fail(ErrorKind::InvalidInput, "g_coordinates: negative dimension");
  const int K = last_support(x) + 1;
  if (K == 0) return std::vector<double>(n, 0.0);
  for (int i = 0; i < K; ++i)
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) fail(ErrorKind::InvalidInput, "g_coordinates: entries must be finite and non-negative");
  Accumulator acc{x, {}};
  Placement pl;
  search(x, K, 0, 0, 0, pl, acc);
  return acc.sums(n);
}

std::vector<double> g_coordinates_exhaustive(const std::vector<double>& x, int n) {
  const int K = last_support(x) + 1;
  if (K == 0) return std::vector<double>(n, 0.0);
  if (K > 16) fail(ErrorKind::InvalidInput, "g_coordinates_exhaustive: support larger than 16");
  const int M = (K + 3) / 4;  // m = M sends every position past the support
  Accumulator acc{x, {}};
  std::vector<int> m(K, 0);
  while (true) {
    std::vector<double> z(K, 0.0);
    std::vector<int> src(K, -1);
    for (int i = 0; i < K; ++i) {
      const int k = i + 4 * m[i];
      if (k < K) z[i] = x[k], src[i] = k;
    }
    bool good = true;
    for (int k = 1; k + 2 < K && good; ++k)
      if (z[k] == 0 && z[k + 1] == 0 && z[k + 2] == 0)
        for (int l = k + 1; l < K; ++l)
          if (z[l] != 0) good = false;
    if (good) {
      Placement pl;
      for (int i = 0; i < K; ++i)
        if (z[i] != 0.0) pl.emplace_back(i, src[i]);
      acc.add(pl);
    }
    // Next non-decreasing sequence in lexicographic order.
    int j = K - 1;
    while (j >= 0 && m[j] == M) --j;
    if (j < 0) break;
    ++m[j];
    for (int l = j + 1; l < K; ++l) m[l] = m[j];
  }
  return acc.sums(n);
}

std::vector<double> project_to_sphere(const std::vector<double>& a) {
  const std::size_t n = a.size();
  if (n == 0) fail(ErrorKind::InvalidInput, "project_to_sphere: empty input");
  std::vector<double> p(n + 1);
  double c2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::sin(kPi * a[i]);
    c2 += std::cos(kPi * a[i]) * std::cos(kPi * a[i]);
  }
  // The sum of squares is never negative, so only the upper branch occurs.
  p[n] = std::sqrt(c2);
  const double s = 1.0 / std::sqrt(double(n));
  for (double& v : p) v *= s;
  return p;
}

GMapResult g_map(const ExtractionResult& e, int n_Q, double r0) {
  if (n_Q < 1) fail(ErrorKind::InvalidInput, "g_map: n_Q must be defined and positive");
  if (!(r0 > 0)) fail(ErrorKind::InvalidInput, "g_map: R0 must be positive");
  GMapResult g;
  g.in_c0 = e.in_c0;
  g.index = epsilon_index(e.x);
  if (!e.in_c0) {
    g.y.assign(n_Q, 0.0);
    g.point.assign(n_Q + 1, 0.0);
    g.point[n_Q] = -1.0;
    return g;
  }
  g.y = g_coordinates(e.x, n_Q);
  double norm = 0.0;
  for (double v : g.y) norm += v * v;
  norm = std::sqrt(norm);
  const double scale = norm <= r0 ? 1.0 / r0 : 1.0 / norm;
  std::vector<double> a(g.y);
  for (double& v : a) v *= scale;
  g.point = project_to_sphere(a);
  return g;
}

GMapResult g_map(const Curve& c, const Mat3& Q, double rho0, double epsilon, double r0) {
  const IndexReport rep = index_report(Q, rho0);
  if (!rep.n_Q) fail(ErrorKind::InvalidInput, "g_map: n_Q is undefined for this Q (truncated sides differ)");
  return g_map(classify_curve(c, Q, rho0, epsilon), *rep.n_Q, r0);
}

double estimate_r0(const std::vector<Curve>& boundary_corpus, const Mat3& Q, double rho0, double epsilon) {
  const IndexReport rep = index_report(Q, rho0);
  if (!rep.n_Q) fail(ErrorKind::InvalidInput, "estimate_r0: n_Q is undefined for this Q");
  const auto results = classify_corpus(boundary_corpus, Q, rho0, epsilon);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (epsilon_index(r.x) < 1) continue;
    const auto y = g_coordinates(r.x, *rep.n_Q);
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0) best = std::min(best, norm);
  }
  if (!std::isfinite(best)) fail(ErrorKind::InvalidInput, "estimate_r0: no boundary curve with positive index and nonzero G");
  return 0.5 * best;
}

}  // namespace geodubins
