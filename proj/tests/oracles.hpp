#pragma once

// Independent reference implementations used only by tests. These avoid the
// library's own code paths wherever practical so a shared bug cannot hide.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "ustitch/geom.hpp"
#include "ustitch/scenario.hpp"
#include "ustitch/stitch.hpp"
#include "ustitch/tracker.hpp"

namespace oracle {

using ustitch::Cov2;
using ustitch::GaussianWaypoint;
using ustitch::Point2;
using ustitch::Polyline;

/// Full-matrix dynamic-time-warping, the textbook recurrence.
inline double dtw_full(const std::vector<Point2>& a,
                       const std::vector<Point2>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double cost = ustitch::distance(a[i], b[j]);
      if (i == 0 && j == 0) {
        d[i][j] = cost;
      } else if (i == 0) {
        d[i][j] = cost + d[i][j - 1];
      } else if (j == 0) {
        d[i][j] = cost + d[i - 1][j];
      } else {
        d[i][j] = cost + std::min({d[i - 1][j], d[i][j - 1],
                                   d[i - 1][j - 1]});
      }
    }
  }
  return d[n - 1][m - 1];
}

/// Trapezoid integration of the speed profile.
inline double integrate_profile_distance(
    double v0, double a0, double t, const ustitch::SpeedProfileParams& p,
    double h = 1e-4) {
  if (t <= 0.0) return 0.0;
  const int n = std::max(1, static_cast<int>(std::ceil(t / h)));
  const double step = t / n;
  double acc = 0.0;
  double prev = ustitch::profile_speed(v0, a0, 0.0, p);
  for (int k = 1; k <= n; ++k) {
    const double cur = ustitch::profile_speed(v0, a0, k * step, p);
    acc += 0.5 * (prev + cur) * step;
    prev = cur;
  }
  return acc;
}

/// Smallest objective value (and its grid point) over a window centered at
/// `center` with the given half-width and step.
inline std::pair<double, Point2> grid_window_min(
    const GaussianWaypoint& wp, const Polyline& goal, double lambda,
    const Point2& center, double half, double step) {
  double best = std::numeric_limits<double>::infinity();
  Point2 best_at = center;
  const int n = static_cast<int>(std::ceil(half / step));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Point2 y{center.x + i * step, center.y + j * step};
      const Point2 g = ustitch::project_point(goal, y).point;
      const double v =
          ustitch::waypoint_objective(y, g, wp.mean, wp.cov, lambda);
      if (v < best) {
        best = v;
        best_at = y;
      }
    }
  }
  return {best, best_at};
}

/// Grid-search minimum of the stitching objective, refined to `final_step`
/// resolution around the best coarse cell and around `hint`. The hint only
/// tightens the pruning bound and seeds one refinement window; the search
/// itself never assumes it is correct.
inline double grid_min_objective(const GaussianWaypoint& wp,
                                 const Polyline& goal, double lambda,
                                 const Point2& hint,
                                 double final_step = 1e-3) {
  const auto eval = [&](const Point2& y) {
    const Point2 g = ustitch::project_point(goal, y).point;
    return ustitch::waypoint_objective(y, g, wp.mean, wp.cov, lambda);
  };
  // Any feasible value bounds the search radius through the Gaussian term:
  // points whose Gaussian term alone exceeds it cannot be the argmin.
  const Point2 proj = ustitch::project_point(goal, wp.mean).point;
  const double bound =
      std::min({eval(wp.mean), eval(proj), eval(hint)});
  const Cov2 prec = wp.cov.regularized().inverse();
  const double radius = std::sqrt(bound / prec.min_eigenvalue()) + 0.25;

  const double coarse = std::max(0.05, radius / 50.0);
  double best = std::numeric_limits<double>::infinity();
  Point2 best_at = wp.mean;
  const int n = static_cast<int>(std::ceil(radius / coarse));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Point2 y{wp.mean.x + i * coarse, wp.mean.y + j * coarse};
      const double v = eval(y);
      if (v < best) {
        best = v;
        best_at = y;
      }
    }
  }
  const double mid_step = 5e-3;
  for (const Point2& center : {best_at, hint}) {
    const auto [mid_val, mid_at] = grid_window_min(
        wp, goal, lambda, center, coarse + mid_step, mid_step);
    best = std::min(best, mid_val);
    best = std::min(best, grid_window_min(wp, goal, lambda, mid_at,
                                          2 * mid_step, final_step).first);
  }
  return best;
}

/// Draws from N(mean, cov) via the Cholesky factor.
inline Point2 gaussian_sample(const Point2& mean, const Cov2& cov,
                              ustitch::Rng& rng) {
  const double l11 = std::sqrt(cov.xx);
  const double l21 = cov.xy / l11;
  const double l22 = std::sqrt(cov.yy - l21 * l21);
  const double z1 = rng.normal();
  const double z2 = rng.normal();
  return {mean.x + l11 * z1, mean.y + l21 * z1 + l22 * z2};
}

/// Random covariance with axis sigmas in [sigma_lo, sigma_hi] and a random
/// orientation.
inline Cov2 random_cov(ustitch::Rng& rng, double sigma_lo, double sigma_hi) {
  const double sa = rng.uniform(sigma_lo, sigma_hi);
  const double sb = rng.uniform(sigma_lo, sigma_hi);
  const double theta = rng.uniform(-ustitch::kPi, ustitch::kPi);
  return Cov2::rotated_diagonal(sa * sa, sb * sb, theta);
}

/// Random lane-like goal: straight line or gentle arc, under a random pose.
inline Polyline random_lane_goal(ustitch::Rng& rng, bool allow_arc = true) {
  const double ang = rng.uniform(-ustitch::kPi, ustitch::kPi);
  const Point2 at{rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)};
  const double c = std::cos(ang);
  const double s = std::sin(ang);
  const auto place = [&](const Point2& p) {
    return Point2{c * p.x - s * p.y + at.x, s * p.x + c * p.y + at.y};
  };
  std::vector<Point2> pts;
  if (!allow_arc || rng.uniform() < 0.5) {
    const double len = rng.uniform(40.0, 120.0);
    pts = {place({-len / 2, 0.0}), place({len / 2, 0.0})};
  } else {
    const double radius = rng.uniform(15.0, 60.0);
    const double span = rng.uniform(0.6, 1.4);  // radians of arc
    const int n = static_cast<int>(std::ceil(span * radius / 0.5));
    for (int k = 0; k <= n; ++k) {
      const double phi = -span / 2 + span * k / n;
      pts.push_back(place(
          {radius * std::sin(phi), radius * (1.0 - std::cos(phi))}));
    }
  }
  return Polyline(ustitch::dedup_points(pts));
}

/// Exact segment-vs-oriented-box overlap via edge crossings plus
/// containment, independent of the library's clipping approach.
inline bool segment_in_box_brute(const ustitch::OrientedBox& box,
                                 const Point2& a, const Point2& b) {
  const auto corners = box.corners();
  const auto seg_cross = [](const Point2& p1, const Point2& p2,
                            const Point2& q1, const Point2& q2) {
    const auto orient = [](const Point2& o, const Point2& u,
                           const Point2& v) {
      return ustitch::cross(u - o, v - o);
    };
    const double d1 = orient(q1, q2, p1);
    const double d2 = orient(q1, q2, p2);
    const double d3 = orient(p1, p2, q1);
    const double d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
      return true;
    }
    const auto on_seg = [&](const Point2& p, const Point2& q,
                            const Point2& r) {
      return std::abs(orient(p, q, r)) < 1e-12 &&
             r.x >= std::min(p.x, q.x) - 1e-12 &&
             r.x <= std::max(p.x, q.x) + 1e-12 &&
             r.y >= std::min(p.y, q.y) - 1e-12 &&
             r.y <= std::max(p.y, q.y) + 1e-12;
    };
    return on_seg(q1, q2, p1) || on_seg(q1, q2, p2) || on_seg(p1, p2, q1) ||
           on_seg(p1, p2, q2);
  };
  for (int i = 0; i < 4; ++i) {
    if (seg_cross(a, b, corners[i], corners[(i + 1) % 4])) return true;
  }
  const auto inside = [&](const Point2& p) {
    const double ch = std::cos(box.heading);
    const double sh = std::sin(box.heading);
    const Point2 rel = p - box.center;
    const double lx = ch * rel.x + sh * rel.y;
    const double ly = -sh * rel.x + ch * rel.y;
    return std::abs(lx) <= box.length / 2 + 1e-12 &&
           std::abs(ly) <= box.width / 2 + 1e-12;
  };
  return inside(a) || inside(b);
}

}  // namespace oracle
