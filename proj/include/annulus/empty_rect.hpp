#pragma once

#include <span>
#include <vector>

#include "annulus/geom.hpp"

namespace annulus {

/// Marker for a rectangle side supported by the bounding box rather than a point.
inline constexpr int kBoxSide = -1;

/// Axis-parallel (in the box frame) maximal empty rectangle: interior free of
/// points, contained in the box, and not extendable on any side.
struct MaxEmptyRect {
  OrientedRect rect;
  int top = kBoxSide, bottom = kBoxSide, left = kBoxSide, right = kBoxSide;
};

/// All maximal empty rectangles among the points inside the box, deduplicated
/// by geometry. Points are given in the box frame; interior emptiness is what
/// counts, so boundary points never block (they may act as supports).
/// Throws if a point lies outside the box by more than eps.
std::vector<MaxEmptyRect> enumerate_mers(std::span<const Point> frame_pts, const OrientedRect& box,
                                         double eps);

/// Maximum-area MER; ties resolve to the lexicographically smallest
/// (lo_x, lo_y, hi_x, hi_y).
MaxEmptyRect largest_empty_rect(std::span<const Point> frame_pts, const OrientedRect& box, double eps);

/// Maximum-side empty square inside the box: the best inscribed square over
/// all MERs, placed at each MER's frame lower-left corner.
OrientedRect largest_empty_square_fixed(std::span<const Point> frame_pts, const OrientedRect& box,
                                        double eps);

}  // namespace annulus
