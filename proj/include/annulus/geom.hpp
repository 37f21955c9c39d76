#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace annulus {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kHalfPi = kPi / 2.0;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Planar point with finite coordinates.
struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {
    if (!std::isfinite(px) || !std::isfinite(py)) {
      throw std::invalid_argument("point coordinates must be finite");
    }
  }
};

inline double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

/// Reduces an angle into [0, period); values within 1e-12 of the period wrap to 0.
double normalize_angle(double theta, double period);

enum class AnglePeriod { half_pi, pi };

/// An orientation angle, normalized modulo its declared period.
/// Problem orientations live in [0, pi/2), segment orientations in [0, pi).
class Orientation {
 public:
  Orientation() = default;
  Orientation(double theta, AnglePeriod period)
      : period_(period), theta_(normalize_angle(theta, period == AnglePeriod::half_pi ? kHalfPi : kPi)) {}

  static Orientation problem(double theta) { return Orientation(theta, AnglePeriod::half_pi); }
  static Orientation segment(double theta) { return Orientation(theta, AnglePeriod::pi); }

  double radians() const { return theta_; }
  AnglePeriod period() const { return period_; }

 private:
  AnglePeriod period_ = AnglePeriod::half_pi;
  double theta_ = 0.0;
};

/// Orientation of the line through p and q, in [0, pi).
/// Throws on coincident points.
Orientation segment_orientation(Point p, Point q);

/// Distance between the orthogonal projections of p and q onto a theta-aligned line:
/// |pq| * |cos(theta_pq - theta)|. Zero for coincident points.
double project_width(Point p, Point q, Orientation theta);

/// Rotates the world by -theta: returns (x cos + y sin, -x sin + y cos).
Point to_frame(Point p, double theta);
Point from_frame(Point p, double theta);
inline Point to_frame(Point p, Orientation theta) { return to_frame(p, theta.radians()); }
inline Point from_frame(Point p, Orientation theta) { return from_frame(p, theta.radians()); }

/// A theta-aligned rectangle stored by its rotated-frame edges.
/// Degenerate (zero width or height) rectangles are allowed.
struct OrientedRect {
  Orientation theta;
  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;

  OrientedRect() = default;
  OrientedRect(Orientation t, double lx, double hx, double ly, double hy)
      : theta(t), lo_x(lx), hi_x(hx), lo_y(ly), hi_y(hy) {
    if (lo_x > hi_x || lo_y > hi_y) {
      throw std::invalid_argument("oriented rect requires lo <= hi on both axes");
    }
  }

  double width() const { return hi_x - lo_x; }
  double height() const { return hi_y - lo_y; }
  double area() const { return width() * height(); }
  Point frame_center() const { return {(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0}; }
  Point world_center() const { return from_frame(frame_center(), theta); }

  bool contains_frame(Point frame_pt, double eps) const {
    return frame_pt.x >= lo_x - eps && frame_pt.x <= hi_x + eps && frame_pt.y >= lo_y - eps &&
           frame_pt.y <= hi_y + eps;
  }
  bool contains_rect(const OrientedRect& other, double eps) const {
    return other.lo_x >= lo_x - eps && other.hi_x <= hi_x + eps && other.lo_y >= lo_y - eps &&
           other.hi_y <= hi_y + eps;
  }

  /// World-coordinate corners, counter-clockwise from the frame bottom-left.
  std::array<Point, 4> corners() const;
};

enum class AnnulusKind { square, uniform_rect, rect };

/// Closed region between an outer and an inner theta-aligned rectangle/square.
struct Annulus {
  AnnulusKind kind = AnnulusKind::rect;
  OrientedRect outer;
  OrientedRect inner;
  // Square annuli additionally carry the shared center and the two radii.
  Point center{};
  double outer_radius = 0.0;
  double inner_radius = 0.0;

  double top_width() const { return outer.hi_y - inner.hi_y; }
  double bottom_width() const { return inner.lo_y - outer.lo_y; }
  double left_width() const { return inner.lo_x - outer.lo_x; }
  double right_width() const { return outer.hi_x - inner.hi_x; }

  /// Maximum of the four side widths.
  double width() const;
  double area() const { return outer.area() - inner.area(); }

  /// Checks closed containment of a point given in the annulus frame.
  bool covers_frame(Point frame_pt, double eps) const {
    if (!outer.contains_frame(frame_pt, eps)) return false;
    // Points strictly inside the inner rectangle are not covered.
    return !(frame_pt.x > inner.lo_x + eps && frame_pt.x < inner.hi_x - eps &&
             frame_pt.y > inner.lo_y + eps && frame_pt.y < inner.hi_y - eps);
  }
};

Annulus make_square_annulus(double theta, Point frame_center, double outer_radius, double inner_radius);
Annulus make_uniform_annulus(const OrientedRect& outer, double uniform_width);
Annulus make_rect_annulus(const OrientedRect& outer, const OrientedRect& inner);

/// Comparison tolerances derived from the instance diameter.
/// The 1e-9 scale factor can be overridden through the ANNULUS_EPS environment variable.
struct Tolerances {
  double diameter = 1.0;
  double eps_geo = 1e-9;    // lengths
  double eps_area = 1e-9;   // areas (scaled by diameter^2)

  static Tolerances for_points(std::span<const Point> pts);
};

/// Bounding-box diagonal, used as the instance scale.
double bbox_diameter(std::span<const Point> pts);

/// Removes exact duplicate points, preserving first occurrences.
/// Returns the number of points removed.
int dedupe_points(std::vector<Point>& pts);

}  // namespace annulus
