#pragma once

#include <span>
#include <vector>

#include "annulus/fixed_solvers.hpp"
#include "annulus/geom.hpp"

namespace annulus {

/// Sampling parameters for the brute-force references.
struct OracleConfig {
  int theta_samples = 20000;
  int center_samples = 100000;

  void validate() const {
    if (theta_samples < 100 || center_samples < 100) {
      throw std::invalid_argument("oracle sample counts must be at least 100");
    }
  }
};

/// A frame-coordinate rectangle produced by the exhaustive MER reference.
struct OracleRect {
  double lo_x, hi_x, lo_y, hi_y;
  double area() const { return (hi_x - lo_x) * (hi_y - lo_y); }
};

/// Exhaustive maximal-empty-rectangle reference: tries every support 4-tuple
/// (point coordinate or box side per side), keeps rectangles that are empty,
/// inside the box, and not extendable. Guarded to |Q| <= 10.
std::vector<OracleRect> oracle_mers(std::span<const Point> frame_pts, double box_lo_x,
                                    double box_hi_x, double box_lo_y, double box_hi_y);

struct OracleValue {
  double width = 0.0;
  double area = 0.0;
  double side = 0.0;       // empty-square / empty-rect runs
  double error_bound = 0.0;  // one-sided bound for sampled quantities
};

/// Fixed-orientation brute force. Square annuli use a center grid along the
/// feasible segment, uniform annuli the direct per-point side distances, and
/// rectangular annuli the exhaustive MER reference. Guarded to |P| <= 12.
OracleValue oracle_fixed(std::span<const Point> pts, double theta, Shape shape, Objective objective,
                         const OracleConfig& cfg = {});

struct OracleGridValue {
  double value = 0.0;
  double secondary = 0.0;   // bicriteria runs: best secondary among near-optimal grid points
  double theta_at = 0.0;
  double grid_step = 0.0;
};

/// Orientation-grid reference: evaluates the exact fixed-orientation solver on
/// theta_samples uniform orientations and returns the best value with the grid
/// step, so callers can apply a Lipschitz-aware tolerance. Guarded to |P| <= 12.
OracleGridValue oracle_any(std::span<const Point> pts, Shape shape, Objective objective,
                           const OracleConfig& cfg = {});

}  // namespace annulus
