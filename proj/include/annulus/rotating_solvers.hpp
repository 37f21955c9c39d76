#pragma once

#include <limits>
#include <span>
#include <vector>

#include "annulus/calipers.hpp"
#include "annulus/empty_rect.hpp"
#include "annulus/fixed_solvers.hpp"
#include "annulus/trig.hpp"

namespace annulus {

/// Orientation interval in whose interior every pairwise frame-x/frame-y
/// ordering, the extreme tuple, and the d(theta) branch are all constant.
struct ElementaryInterval {
  double lo = 0.0;
  double hi = 0.0;
  int primary_index = 0;
};

/// Per-side supports of a maximal empty rectangle; kBoxSide marks a side lying
/// on the enclosing rectangle (resolved to the extreme point of the moment).
struct SupportKey {
  int top = kBoxSide, bottom = kBoxSide, left = kBoxSide, right = kBoxSide;
  bool operator==(const SupportKey&) const = default;
};

/// Maximal run of orientations over which one support tuple stays a maximal
/// empty rectangle. J = [lo, hi] is the union of the covered elementary
/// intervals (inclusive index range).
struct MERClass {
  SupportKey key;
  double lo = 0.0;
  double hi = 0.0;
  int first_interval = 0;
  int last_interval = 0;
};

struct SweepDiagnostics {
  int primary_intervals = 0;
  int elementary_intervals = 0;
  int mer_classes = 0;
  long long pairs_T = 0;   // (class, elementary interval) incidences
  int t = -1;              // components of the width-minimizing orientation set
  int r_at_star = -1;      // maximal empty rectangles at theta_star
  bool degenerate = false;
};

struct SweepReport {
  double theta_star = 0.0;
  double width = 0.0;
  double area = 0.0;
  double side = std::numeric_limits<double>::quiet_NaN();  // empty-shape runs
  FixedSolveResult witness;
  SweepDiagnostics diag;
};

std::vector<ElementaryInterval> elementary_intervals(std::span<const Point> pts);
std::vector<MERClass> mer_classes(std::span<const Point> pts);

/// Side length of the largest theta-aligned square centered on the feasible
/// center segment and contained in the class rectangle, as a piecewise
/// frequency-1 base-0 sinusoid over [lo, hi] (a sub-range of one refined
/// primary interval).
PiecewiseSinusoid compute_delta(std::span<const Point> pts, const PrimaryInterval& prim,
                                const SupportKey& key, double lo, double hi);

SweepReport min_area_rect_annulus_any(std::span<const Point> pts, int threads = 1);
SweepReport min_width_min_area_rect_annulus_any(std::span<const Point> pts, int threads = 1);
SweepReport min_area_min_width_rect_annulus_any(std::span<const Point> pts, int threads = 1);
SweepReport uniform_rect_any(std::span<const Point> pts, Objective objective, int threads = 1);
SweepReport square_annulus_any(std::span<const Point> pts, Objective objective, int threads = 1);
SweepReport largest_empty_square_any(std::span<const Point> pts, int threads = 1);
SweepReport largest_empty_rect_any(std::span<const Point> pts, int threads = 1);

/// Dispatch on (shape, objective) over all orientations.
SweepReport solve_any(std::span<const Point> pts, Shape shape, Objective objective, int threads = 1);

/// Consistency route for the square width objective: assembles the global
/// width function as lower envelopes of the per-class candidates on every
/// elementary interval and minimizes it explicitly. Guarded to |P| <= 30.
double square_width_cross_check(std::span<const Point> pts);

}  // namespace annulus
