#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace ustitch {

inline constexpr double kPi = 3.14159265358979323846;

// Segments shorter than this are treated as degenerate.
inline constexpr double kMinSegmentLength = 1e-9;

/// Raised when a covariance matrix is not positive-definite even after
/// regularization.
struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point2& o) const = default;
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }

double dot(const Point2& a, const Point2& b);
double cross(const Point2& a, const Point2& b);
double norm(const Point2& p);
double squared_norm(const Point2& p);
double distance(const Point2& a, const Point2& b);

/// Normalizes an angle to (-pi, pi].
double normalize_angle(double radians);

/// Symmetric 2x2 covariance matrix, stored as its three unique entries.
struct Cov2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;

  static Cov2 identity() { return {1.0, 0.0, 1.0}; }
  static Cov2 diagonal(double sx, double sy) { return {sx, 0.0, sy}; }
  /// R(theta) * diag(a, b) * R(theta)^T.
  static Cov2 rotated_diagonal(double a, double b, double theta);

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  double min_eigenvalue() const;
  double max_eigenvalue() const;

  /// Adds eps*I when the smaller eigenvalue falls below eps (1e-6 m^2).
  /// Guards near-singular matrices; genuinely negative eigenvalues are
  /// left for inverse() to reject.
  Cov2 regularized() const;

  /// Throws NotPositiveDefiniteError unless positive-definite.
  Cov2 inverse() const;

  Point2 apply(const Point2& v) const {
    return {xx * v.x + xy * v.y, xy * v.x + yy * v.y};
  }
};

/// 2-D polyline with cached cumulative arc lengths. At least two vertices,
/// consecutive vertices distinct.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return verts_; }
  const std::vector<double>& cumulative_arcs() const { return cum_; }
  double length() const { return cum_.back(); }
  std::size_t segment_count() const { return verts_.size() - 1; }

 private:
  std::vector<Point2> verts_;
  std::vector<double> cum_;
};

/// Drops consecutive points closer than kMinSegmentLength so the remainder
/// forms a valid polyline vertex list.
std::vector<Point2> dedup_points(const std::vector<Point2>& points);

struct Projection {
  Point2 point;
  double arc = 0.0;
};

/// Closest point on the polyline in Euclidean distance, with its arc-length
/// coordinate. Ties resolve to the smallest arc.
Projection project_point(const Polyline& line, const Point2& p);

/// Point at the given arc length, clamped to [0, length].
Point2 point_at(const Polyline& line, double arc);

/// Direction of the segment containing `arc`; at interior vertices the
/// following segment wins. Out-of-range arcs clamp.
double heading_at(const Polyline& line, double arc);

/// Vertices at arc lengths 0, step, 2*step, ... plus the original terminal
/// vertex.
Polyline resample(const Polyline& line, double step);

/// sqrt((p-mean)^T cov^-1 (p-mean)).
double mahalanobis_distance(const Point2& p, const Point2& mean,
                            const Cov2& cov);

enum class ProjectionMetric {
  kEuclidean,    // deployed approximation: plain Euclidean projection
  kMahalanobis,  // exact per-segment quadratic minimization
};

/// Closest point on the polyline from `mean` under the chosen metric.
Point2 mahalanobis_project(const Polyline& line, const Point2& mean,
                           const Cov2& cov,
                           ProjectionMetric metric = ProjectionMetric::kEuclidean);

/// Axis-aligned rectangle in its own frame, posed by center and heading.
struct OrientedBox {
  Point2 center;
  double heading = 0.0;  // radians, normalized to (-pi, pi]
  double length = 1.0;
  double width = 1.0;

  OrientedBox() = default;
  OrientedBox(Point2 c, double h, double l, double w);

  std::array<Point2, 4> corners() const;
};

/// True iff any polyline segment intersects or is contained in the box.
bool box_intersects_polyline(const OrientedBox& box, const Polyline& line);

}  // namespace ustitch
