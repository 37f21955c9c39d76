#pragma once

#include <span>
#include <vector>

#include "annulus/geom.hpp"
#include "annulus/trig.hpp"

namespace annulus {

/// Indices of the extreme points of P in a given orientation.
/// Ties resolve to the smallest point index.
struct ExtremeTuple {
  int top = 0, bottom = 0, left = 0, right = 0;
  bool operator==(const ExtremeTuple&) const = default;
};

/// Which term realizes the smallest-enclosing-square side d(theta):
/// the frame height w_{theta+pi/2}(q_t, q_b) or the frame width w_theta(q_l, q_r).
enum class DBranch { height, width };

/// Maximal orientation interval with a constant extreme tuple, refined so the
/// d(theta) branch is also constant in its interior.
struct PrimaryInterval {
  double lo = 0.0;
  double hi = 0.0;
  ExtremeTuple tuple;
  DBranch d_branch = DBranch::height;
  bool branch_tie = false;  // height and width coincide throughout (|C_theta| == 0)
};

/// Segment of centers of all smallest enclosing theta-aligned squares.
/// Aligned with theta when the height realizes d, with theta+pi/2 otherwise;
/// degenerates to the rectangle center when height == width.
struct CenterSegment {
  double theta = 0.0;
  Point a{};  // endpoint with the smaller frame coordinate
  Point b{};
  bool along_theta = true;
  double length = 0.0;
};

ExtremeTuple extremes(std::span<const Point> pts, double theta);
OrientedRect enclosing_rect(std::span<const Point> pts, double theta);

/// Partition of [0, pi/2) into refined primary intervals. Candidate breakpoints
/// are the pairwise coordinate-tie orientations plus the roots of
/// height(theta) - width(theta) inside each tuple-constant interval.
std::vector<PrimaryInterval> primary_intervals(std::span<const Point> pts);

/// Side of the smallest enclosing theta-aligned square: max(height, width) of R_theta.
double square_side(std::span<const Point> pts, double theta);

CenterSegment center_segment(std::span<const Point> pts, double theta);

/// Frame x'/y' difference of two points as frequency-1 base-0 sinusoids of theta.
Sinusoid frame_dx_sinusoid(Point p, Point q);
Sinusoid frame_dy_sinusoid(Point p, Point q);

}  // namespace annulus
