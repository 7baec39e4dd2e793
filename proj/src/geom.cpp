#include "ustitch/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ustitch {

namespace {
constexpr double kCovEpsilon = 1e-6;  // m^2
}

double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

double squared_norm(const Point2& p) { return p.x * p.x + p.y * p.y; }

double norm(const Point2& p) { return std::hypot(p.x, p.y); }

double distance(const Point2& a, const Point2& b) { return norm(a - b); }

double normalize_angle(double radians) {
  double a = std::fmod(radians, 2.0 * kPi);
  if (a <= -kPi) {
    a += 2.0 * kPi;
  } else if (a > kPi) {
    a -= 2.0 * kPi;
  }
  return a;
}

Cov2 Cov2::rotated_diagonal(double a, double b, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {a * c * c + b * s * s, (a - b) * s * c, a * s * s + b * c * c};
}

double Cov2::min_eigenvalue() const {
  const double mean = 0.5 * trace();
  const double disc = std::sqrt(std::max(0.0, mean * mean - det()));
  return mean - disc;
}

double Cov2::max_eigenvalue() const {
  const double mean = 0.5 * trace();
  const double disc = std::sqrt(std::max(0.0, mean * mean - det()));
  return mean + disc;
}

Cov2 Cov2::regularized() const {
  if (min_eigenvalue() < kCovEpsilon) {
    return {xx + kCovEpsilon, xy, yy + kCovEpsilon};
  }
  return *this;
}

Cov2 Cov2::inverse() const {
  const double d = det();
  if (!(d > 0.0) || !(xx > 0.0)) {
    throw NotPositiveDefiniteError("covariance is not positive-definite");
  }
  return {yy / d, -xy / d, xx / d};
}

Polyline::Polyline(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 2) {
    throw std::invalid_argument("polyline needs at least 2 vertices");
  }
  cum_.resize(verts_.size());
  cum_[0] = 0.0;
  for (std::size_t i = 1; i < verts_.size(); ++i) {
    const double seg = distance(verts_[i - 1], verts_[i]);
    if (seg <= kMinSegmentLength) {
      throw std::invalid_argument("polyline has a degenerate segment");
    }
    cum_[i] = cum_[i - 1] + seg;
  }
}

std::vector<Point2> dedup_points(const std::vector<Point2>& points) {
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const Point2& p : points) {
    if (out.empty() || distance(out.back(), p) > kMinSegmentLength) {
      out.push_back(p);
    }
  }
  return out;
}

Projection project_point(const Polyline& line, const Point2& p) {
  const auto& v = line.vertices();
  const auto& cum = line.cumulative_arcs();
  Projection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Point2 d = v[i + 1] - v[i];
    const double len2 = squared_norm(d);
    double t = dot(p - v[i], d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Point2 cand = v[i] + d * t;
    const double d2 = squared_norm(p - cand);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.point = cand;
      best.arc = cum[i] + t * (cum[i + 1] - cum[i]);
    }
  }
  return best;
}

Point2 point_at(const Polyline& line, double arc) {
  const auto& v = line.vertices();
  const auto& cum = line.cumulative_arcs();
  if (arc <= 0.0) return v.front();
  if (arc >= line.length()) return v.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), arc);
  const std::size_t i = static_cast<std::size_t>(it - cum.begin()) - 1;
  const double t = (arc - cum[i]) / (cum[i + 1] - cum[i]);
  return v[i] + (v[i + 1] - v[i]) * t;
}

double heading_at(const Polyline& line, double arc) {
  const auto& v = line.vertices();
  const auto& cum = line.cumulative_arcs();
  std::size_t i;
  if (arc >= line.length()) {
    i = v.size() - 2;
  } else if (arc <= 0.0) {
    i = 0;
  } else {
    // upper_bound picks the segment after the vertex when arc lands on one.
    const auto it = std::upper_bound(cum.begin(), cum.end(), arc);
    i = static_cast<std::size_t>(it - cum.begin()) - 1;
  }
  const Point2 d = v[i + 1] - v[i];
  return std::atan2(d.y, d.x);
}

Polyline resample(const Polyline& line, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("resample step must be positive");
  }
  std::vector<Point2> out;
  const double total = line.length();
  for (double arc = 0.0; arc < total - kMinSegmentLength; arc += step) {
    out.push_back(point_at(line, arc));
  }
  out.push_back(line.vertices().back());
  return Polyline(std::move(out));
}

double mahalanobis_distance(const Point2& p, const Point2& mean,
                            const Cov2& cov) {
  const Cov2 prec = cov.regularized().inverse();
  const Point2 v = p - mean;
  return std::sqrt(std::max(0.0, dot(v, prec.apply(v))));
}

Point2 mahalanobis_project(const Polyline& line, const Point2& mean,
                           const Cov2& cov, ProjectionMetric metric) {
  if (metric == ProjectionMetric::kEuclidean) {
    return project_point(line, mean).point;
  }
  const Cov2 prec = cov.regularized().inverse();
  const auto& v = line.vertices();
  Point2 best = v.front();
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Point2 a = v[i] - mean;
    const Point2 d = v[i + 1] - v[i];
    const double denom = dot(d, prec.apply(d));
    double t = denom > 0.0 ? -dot(a, prec.apply(d)) / denom : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Point2 rel = a + d * t;
    const double d2 = dot(rel, prec.apply(rel));
    if (d2 < best_d2) {
      best_d2 = d2;
      best = v[i] + d * t;
    }
  }
  return best;
}

OrientedBox::OrientedBox(Point2 c, double h, double l, double w)
    : center(c), heading(normalize_angle(h)), length(l), width(w) {
  if (!(length > 0.0) || !(width > 0.0)) {
    throw std::invalid_argument("box dimensions must be positive");
  }
}

std::array<Point2, 4> OrientedBox::corners() const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  const auto world = [&](double lx, double ly) -> Point2 {
    return {center.x + c * lx - s * ly, center.y + s * lx + c * ly};
  };
  return {world(hl, hw), world(-hl, hw), world(-hl, -hw), world(hl, -hw)};
}

namespace {

// Liang-Barsky segment vs axis-aligned box [-hl,hl]x[-hw,hw]; covers both
// crossing and containment.
bool segment_hits_aabb(const Point2& a, const Point2& b, double hl, double hw) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x + hl, hl - a.x, a.y + hw, hw - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;  // parallel and outside
    } else {
      const double r = q[i] / p[i];
      if (p[i] < 0.0) {
        t0 = std::max(t0, r);
      } else {
        t1 = std::min(t1, r);
      }
      if (t0 > t1) return false;
    }
  }
  return true;
}

}  // namespace

bool box_intersects_polyline(const OrientedBox& box, const Polyline& line) {
  const double c = std::cos(box.heading);
  const double s = std::sin(box.heading);
  const auto to_local = [&](const Point2& p) -> Point2 {
    const Point2 r = p - box.center;
    return {c * r.x + s * r.y, -s * r.x + c * r.y};
  };
  const auto& v = line.vertices();
  Point2 prev = to_local(v[0]);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const Point2 cur = to_local(v[i]);
    if (segment_hits_aabb(prev, cur, 0.5 * box.length, 0.5 * box.width)) {
      return true;
    }
    prev = cur;
  }
  return false;
}

}  // namespace ustitch
