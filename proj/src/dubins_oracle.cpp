#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "geodubins/dubins.hpp"
#include "geodubins/parallel.hpp"

namespace geodubins {

namespace {

// One residual family: first arc on side s1, then either a geodesic tangent
// to the end circle on side s3 (kind 0) or an arc of the opposite side
// tangent to the end circle on side s1 (kind 1).
struct Family {
  int s1, s3, kind;
};

struct OracleSetup {
  Frame R;
  double rho, C, S;
  Vec3 q;
};

Frame after_first(const OracleSetup& o, int s1, double phi) {
  const Vec3 c1 = o.C * e1() + s1 * o.S * e3();
  return rotation_about_axis(c1, s1 * phi);
}

Vec3 end_center(const OracleSetup& o, int side) { return (o.C * o.q + side * o.S * o.R.col(2)).normalized(); }

double residual(const OracleSetup& o, const Family& f, double phi) {
  const Frame F = after_first(o, f.s1, phi);
  if (f.kind == 0) return F.col(2).dot(end_center(o, f.s3)) - f.s3 * o.S;
  const Vec3 c2 = o.C * F.col(0) - f.s1 * o.S * F.col(2);
  return c2.dot(end_center(o, f.s1)) - std::cos(2 * o.rho);
}

// Length of the completed path at a residual root, or +inf if the completion
// does not reach the target frame.
double complete(const OracleSetup& o, const Family& f, double phi) {
  const Frame F = after_first(o, f.s1, phi);
  const Vec3 a = F.col(0);
  Frame end;
  double len;
  if (f.kind == 0) {
    const Vec3 m = F.col(2), c3 = end_center(o, f.s3);
    const Vec3 b = ((c3 - f.s3 * o.S * m) / o.C).normalized();
    const double theta = wrap_2pi(std::atan2(m.dot(a.cross(b)), a.dot(b)));
    const double beta = wrap_2pi(f.s3 * signed_angle(c3, b, o.q));
    end = rotation_about_axis(c3, f.s3 * beta) * rotation_about_axis(m, theta) * F;
    len = phi * o.S + theta + beta * o.S;
  } else {
    const Vec3 c2 = (o.C * a - f.s1 * o.S * F.col(2)).normalized(), c3 = end_center(o, f.s1);
    const Vec3 x23 = (c2 + c3).normalized();
    const double lambda = wrap_2pi(-f.s1 * signed_angle(c2, a, x23));
    const double beta = wrap_2pi(f.s1 * signed_angle(c3, x23, o.q));
    end = rotation_about_axis(c3, f.s1 * beta) * rotation_about_axis(c2, -f.s1 * lambda) * F;
    len = (phi + lambda + beta) * o.S;
  }
  if (frame_distance(end, o.R) > 1e-6) return std::numeric_limits<double>::infinity();
  return len;
}

double refine(const OracleSetup& o, const Family& f, double lo, double hi, double flo) {
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual(o, f, mid);
    if ((fm <= 0) == (flo <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <bool Parallel>
double oracle_impl(const Frame& P, const Frame& Q, double rho, int grid) {
  OracleSetup o{P.transpose() * Q, rho, std::cos(rho), std::sin(rho), Vec3()};
  o.q = o.R.col(0);
  const Family fams[6] = {{1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, 1, 1}, {-1, -1, 1}};
  const int nf = 6, np = grid + 1;
  std::vector<double> res(std::size_t(nf) * np);
  const int threads = thread_count();

#pragma omp parallel for num_threads(threads) schedule(static) if (Parallel)
  for (int idx = 0; idx < nf * np; ++idx) {
    const int fi = idx / np, k = idx % np;
    res[idx] = residual(o, fams[fi], kTwoPi * k / grid);
  }

  struct Bracket {
    int fam;
    double lo, hi, flo;
  };
  std::vector<Bracket> brackets;
  for (int fi = 0; fi < nf; ++fi) {
    for (int k = 0; k < grid; ++k) {
      const double f0 = res[std::size_t(fi) * np + k], f1 = res[std::size_t(fi) * np + k + 1];
      if (f0 == 0.0 || f0 * f1 < 0.0) brackets.push_back({fi, kTwoPi * k / grid, kTwoPi * (k + 1) / grid, f0});
    }
  }

  std::vector<double> lens(brackets.size(), std::numeric_limits<double>::infinity());
  const int nb = int(brackets.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic) if (Parallel)
  for (int b = 0; b < nb; ++b) {
    const auto& br = brackets[b];
    const Family& f = fams[br.fam];
    const double phi = br.flo == 0.0 ? br.lo : refine(o, f, br.lo, br.hi, br.flo);
    lens[b] = complete(o, f, phi);
  }

  double best = std::numeric_limits<double>::infinity();
  for (double l : lens) best = std::min(best, l);
  return std::isfinite(best) ? best : -1.0;
}

}  // namespace

double sweep_oracle(const Frame& P, const Frame& Q, double rho, int grid) {
  return oracle_impl<true>(P, Q, rho, grid);
}

double sweep_oracle_serial(const Frame& P, const Frame& Q, double rho, int grid) {
  return oracle_impl<false>(P, Q, rho, grid);
}

}  // namespace geodubins
