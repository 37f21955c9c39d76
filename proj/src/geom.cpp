#include "annulus/geom.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace annulus {

namespace {
constexpr double kAngleEps = 1e-12;
}

double normalize_angle(double theta, double period) {
  double t = std::fmod(theta, period);
  if (t < 0.0) t += period;
  if (period - t < kAngleEps) t = 0.0;
  return t;
}

Orientation segment_orientation(Point p, Point q) {
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  if (dx == 0.0 && dy == 0.0) {
    throw std::invalid_argument("degenerate segment");
  }
  return Orientation::segment(std::atan2(dy, dx));
}

double project_width(Point p, Point q, Orientation theta) {
  const double t = theta.radians();
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  return std::abs(dx * std::cos(t) + dy * std::sin(t));
}

Point to_frame(Point p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {p.x * c + p.y * s, -p.x * s + p.y * c};
}

Point from_frame(Point p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {p.x * c - p.y * s, p.x * s + p.y * c};
}

std::array<Point, 4> OrientedRect::corners() const {
  const double t = theta.radians();
  return {from_frame({lo_x, lo_y}, t), from_frame({hi_x, lo_y}, t), from_frame({hi_x, hi_y}, t),
          from_frame({lo_x, hi_y}, t)};
}

double Annulus::width() const {
  return std::max({top_width(), bottom_width(), left_width(), right_width()});
}

Annulus make_square_annulus(double theta, Point frame_center, double outer_radius, double inner_radius) {
  if (outer_radius < 0.0 || inner_radius < 0.0 || inner_radius > outer_radius) {
    throw std::invalid_argument("square annulus requires 0 <= inner_radius <= outer_radius");
  }
  Annulus a;
  a.kind = AnnulusKind::square;
  const Orientation t = Orientation::problem(theta);
  a.outer = OrientedRect(t, frame_center.x - outer_radius, frame_center.x + outer_radius,
                         frame_center.y - outer_radius, frame_center.y + outer_radius);
  a.inner = OrientedRect(t, frame_center.x - inner_radius, frame_center.x + inner_radius,
                         frame_center.y - inner_radius, frame_center.y + inner_radius);
  a.center = from_frame(frame_center, theta);
  a.outer_radius = outer_radius;
  a.inner_radius = inner_radius;
  return a;
}

Annulus make_uniform_annulus(const OrientedRect& outer, double uniform_width) {
  const double w = uniform_width;
  if (w < 0.0 || 2.0 * w > outer.width() + 1e-9 * (1.0 + outer.width()) ||
      2.0 * w > outer.height() + 1e-9 * (1.0 + outer.height())) {
    throw std::invalid_argument("uniform width exceeds half the outer rectangle");
  }
  Annulus a;
  a.kind = AnnulusKind::uniform_rect;
  a.outer = outer;
  // Clamp so float noise cannot invert a degenerate inner rectangle.
  const double lx = std::min(outer.lo_x + w, outer.hi_x - w);
  const double ly = std::min(outer.lo_y + w, outer.hi_y - w);
  a.inner = OrientedRect(outer.theta, lx, std::max(lx, outer.hi_x - w), ly, std::max(ly, outer.hi_y - w));
  return a;
}

Annulus make_rect_annulus(const OrientedRect& outer, const OrientedRect& inner) {
  Annulus a;
  a.kind = AnnulusKind::rect;
  a.outer = outer;
  a.inner = inner;
  return a;
}

double bbox_diameter(std::span<const Point> pts) {
  if (pts.empty()) return 0.0;
  double lx = pts[0].x, hx = pts[0].x, ly = pts[0].y, hy = pts[0].y;
  for (const Point& p : pts) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  }
  return std::hypot(hx - lx, hy - ly);
}

Tolerances Tolerances::for_points(std::span<const Point> pts) {
  Tolerances tol;
  double scale_factor = 1e-9;
  if (const char* env = std::getenv("ANNULUS_EPS")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0 && std::isfinite(v)) scale_factor = v;
    } catch (const std::exception&) {
      // Malformed override is ignored; default scale stays in effect.
    }
  }
  double d = bbox_diameter(pts);
  if (d <= 0.0) {
    d = 1.0;
    for (const Point& p : pts) d = std::max({d, std::abs(p.x), std::abs(p.y)});
  }
  tol.diameter = d;
  tol.eps_geo = scale_factor * d;
  tol.eps_area = scale_factor * d * d;
  return tol;
}

int dedupe_points(std::vector<Point>& pts) {
  std::vector<Point> unique;
  unique.reserve(pts.size());
  int removed = 0;
  for (const Point& p : pts) {
    bool seen = false;
    for (const Point& q : unique) {
      if (p.x == q.x && p.y == q.y) {
        seen = true;
        break;
      }
    }
    if (seen) {
      ++removed;
    } else {
      unique.push_back(p);
    }
  }
  pts = std::move(unique);
  return removed;
}

}  // namespace annulus
