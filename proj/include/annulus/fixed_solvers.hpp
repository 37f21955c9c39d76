#pragma once

#include <span>
#include <vector>

#include "annulus/empty_rect.hpp"
#include "annulus/geom.hpp"

namespace annulus {

enum class Shape { square, uniform_rect, rect, empty_rect, empty_square };

/// Objectives: width / area minimize one criterion; area_width minimizes area
/// among minimum-width annuli; width_area minimizes width among minimum-area
/// annuli; largest applies to the empty shapes.
enum class Objective { width, area, area_width, width_area, largest };

struct FixedSolveResult {
  Annulus annulus;
  double width = 0.0;
  double area = 0.0;
  std::vector<int> outer_supports;
  std::vector<int> inner_supports;
  bool degenerate = false;
  int mer_count = -1;  // rectangular solves record r
};

/// Minimum-width square annulus at a fixed orientation. The outer square is a
/// smallest enclosing square; the center maximizes the L-infinity clearance
/// over the feasible center segment (exact piecewise-linear maximization).
FixedSolveResult min_width_square_annulus_fixed(std::span<const Point> pts, double theta);

/// Same optimal annulus as the width solver (a minimum-area square annulus is
/// a minimum-width one with smallest enclosing outer square).
FixedSolveResult min_area_square_annulus_fixed(std::span<const Point> pts, double theta);

/// The unique minimum-area (equivalently minimum-width) uniform rectangular
/// annulus whose outer rectangle is the smallest enclosing rectangle.
FixedSolveResult uniform_rect_annulus_fixed(std::span<const Point> pts, double theta);

/// Minimum-area rectangular annulus: outer is the smallest enclosing
/// rectangle, inner is a largest empty rectangle among the points.
FixedSolveResult min_area_rect_annulus_fixed(std::span<const Point> pts, double theta);

/// Minimum-area among minimum-width rectangular annuli: the width equals the
/// uniform optimum w*; the inner is the largest-area MER containing the
/// uniform annulus's inner rectangle.
FixedSolveResult min_area_min_width_rect_annulus_fixed(std::span<const Point> pts, double theta);

/// Minimum-width among minimum-area rectangular annuli: scans all maximum-area
/// MERs and keeps the annulus of least width.
FixedSolveResult min_width_min_area_rect_annulus_fixed(std::span<const Point> pts, double theta);

/// Largest empty rectangle / square among P inside the smallest enclosing
/// rectangle, reported with outer = R_theta and inner = the empty shape.
FixedSolveResult largest_empty_rect_fixed_solve(std::span<const Point> pts, double theta);
FixedSolveResult largest_empty_square_fixed_solve(std::span<const Point> pts, double theta);

/// Dispatch on (shape, objective). Throws std::invalid_argument for
/// combinations outside the supported matrix.
FixedSolveResult solve_fixed(std::span<const Point> pts, double theta, Shape shape, Objective objective);

}  // namespace annulus
