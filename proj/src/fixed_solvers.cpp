#include "annulus/fixed_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "annulus/calipers.hpp"

namespace annulus {

namespace {

std::vector<Point> frame_points(std::span<const Point> pts, double theta) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(to_frame(p, theta));
  return out;
}

void require_nonempty(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("solver requires at least one point");
}

// L-infinity distance in the frame.
double linf(Point a, Point b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

double rect_annulus_width(const OrientedRect& outer, const OrientedRect& inner) {
  return std::max({outer.hi_y - inner.hi_y, inner.lo_y - outer.lo_y, inner.lo_x - outer.lo_x,
                   outer.hi_x - inner.hi_x});
}

std::vector<int> boundary_supports(const std::vector<Point>& fpts, const OrientedRect& rect,
                                   double eps) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(fpts.size()); ++i) {
    const Point& p = fpts[i];
    if (!rect.contains_frame(p, eps)) continue;
    const bool on_edge = std::abs(p.x - rect.lo_x) <= eps || std::abs(p.x - rect.hi_x) <= eps ||
                         std::abs(p.y - rect.lo_y) <= eps || std::abs(p.y - rect.hi_y) <= eps;
    if (on_edge) out.push_back(i);
  }
  return out;
}

// Maximizes rho(c) = min_p linf(c, p) over the feasible center segment, which
// is piecewise linear in the segment parameter with slopes in {-1, 0, +1}.
// Candidates: segment ends, per-point plateau ends, and pairwise crossings of
// the elementary linear branches. Flat optima resolve to the smallest
// coordinate.
struct CenterOpt {
  Point center;
  double rho;
};

CenterOpt maximize_clearance(const std::vector<Point>& fpts, Point seg_a, Point seg_b) {
  const bool horizontal = seg_a.y == seg_b.y;
  const double fixed = horizontal ? seg_a.y : seg_a.x;
  double u0 = horizontal ? seg_a.x : seg_a.y;
  double u1 = horizontal ? seg_b.x : seg_b.y;
  if (u0 > u1) std::swap(u0, u1);

  // Along-segment coordinate u and cross distance k per point.
  std::vector<double> us, ks;
  us.reserve(fpts.size());
  ks.reserve(fpts.size());
  for (const Point& p : fpts) {
    us.push_back(horizontal ? p.x : p.y);
    ks.push_back(std::abs((horizontal ? p.y : p.x) - fixed));
  }

  std::vector<double> cands = {u0, u1};
  auto push = [&](double u) {
    if (u > u0 && u < u1) cands.push_back(u);
  };
  for (size_t i = 0; i < us.size(); ++i) {
    push(us[i] - ks[i]);
    push(us[i] + ks[i]);
    for (size_t j = i + 1; j < us.size(); ++j) {
      push((us[i] + us[j]) / 2.0);
      push(us[i] - ks[j]);
      push(us[i] + ks[j]);
      push(us[j] - ks[i]);
      push(us[j] + ks[i]);
    }
  }
  std::sort(cands.begin(), cands.end());

  double best_u = u0, best_rho = -1.0;
  for (double u : cands) {
    double rho = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < us.size(); ++i) {
      rho = std::min(rho, std::max(std::abs(u - us[i]), ks[i]));
    }
    if (rho > best_rho) {
      best_rho = rho;
      best_u = u;
    }
  }
  return {horizontal ? Point{best_u, fixed} : Point{fixed, best_u}, best_rho};
}

FixedSolveResult finish_rect_result(std::span<const Point> pts, double theta,
                                    const OrientedRect& outer, const MaxEmptyRect& inner_mer,
                                    int mer_count, double eps) {
  FixedSolveResult res;
  res.annulus = make_rect_annulus(outer, inner_mer.rect);
  res.width = rect_annulus_width(outer, inner_mer.rect);
  res.area = res.annulus.area();
  const std::vector<Point> fpts = frame_points(pts, theta);
  res.outer_supports = boundary_supports(fpts, outer, eps);
  res.inner_supports = boundary_supports(fpts, inner_mer.rect, eps);
  res.degenerate = std::min(outer.width(), outer.height()) <= eps;
  res.mer_count = mer_count;
  return res;
}

}  // namespace

FixedSolveResult min_width_square_annulus_fixed(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const std::vector<Point> fpts = frame_points(pts, theta);

  const OrientedRect r = enclosing_rect(pts, theta);
  const double d = std::max(r.width(), r.height());
  const Point c = r.frame_center();
  Point seg_a, seg_b;
  if (r.height() >= r.width()) {
    seg_a = {r.hi_x - d / 2.0, c.y};
    seg_b = {r.lo_x + d / 2.0, c.y};
  } else {
    seg_a = {c.x, r.hi_y - d / 2.0};
    seg_b = {c.x, r.lo_y + d / 2.0};
  }

  const CenterOpt opt = maximize_clearance(fpts, seg_a, seg_b);
  const double inner_r = std::min(opt.rho, d / 2.0);

  FixedSolveResult res;
  res.annulus = make_square_annulus(theta, opt.center, d / 2.0, inner_r);
  res.width = d / 2.0 - inner_r;
  res.area = res.annulus.area();
  for (int i = 0; i < static_cast<int>(fpts.size()); ++i) {
    const double dist = linf(fpts[i], opt.center);
    if (std::abs(dist - d / 2.0) <= tol.eps_geo) res.outer_supports.push_back(i);
    if (std::abs(dist - inner_r) <= tol.eps_geo) res.inner_supports.push_back(i);
  }
  res.degenerate = std::min(r.width(), r.height()) <= tol.eps_geo;
  return res;
}

FixedSolveResult min_area_square_annulus_fixed(std::span<const Point> pts, double theta) {
  return min_width_square_annulus_fixed(pts, theta);
}

FixedSolveResult uniform_rect_annulus_fixed(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const std::vector<Point> fpts = frame_points(pts, theta);
  const OrientedRect r = enclosing_rect(pts, theta);

  double w = 0.0;
  for (const Point& p : fpts) {
    const double fp = std::min({p.x - r.lo_x, r.hi_x - p.x, p.y - r.lo_y, r.hi_y - p.y});
    w = std::max(w, fp);
  }
  FixedSolveResult res;
  res.annulus = make_uniform_annulus(r, w);
  res.width = w;
  res.area = res.annulus.area();
  res.outer_supports = boundary_supports(fpts, r, tol.eps_geo);
  res.inner_supports = boundary_supports(fpts, res.annulus.inner, tol.eps_geo);
  res.degenerate = std::min(r.width(), r.height()) <= tol.eps_geo;
  return res;
}

FixedSolveResult min_area_rect_annulus_fixed(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const std::vector<Point> fpts = frame_points(pts, theta);
  const OrientedRect r = enclosing_rect(pts, theta);
  const std::vector<MaxEmptyRect> mers = enumerate_mers(fpts, r, tol.eps_geo);
  const MaxEmptyRect inner = largest_empty_rect(fpts, r, tol.eps_geo);
  return finish_rect_result(pts, theta, r, inner, static_cast<int>(mers.size()), tol.eps_geo);
}

FixedSolveResult min_area_min_width_rect_annulus_fixed(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const FixedSolveResult uniform = uniform_rect_annulus_fixed(pts, theta);
  const OrientedRect& outer = uniform.annulus.outer;
  const OrientedRect& shrunk = uniform.annulus.inner;

  const std::vector<Point> fpts = frame_points(pts, theta);
  const std::vector<MaxEmptyRect> mers = enumerate_mers(fpts, outer, tol.eps_geo);

  // Containing the uniform inner rectangle caps every side width at w*.
  const MaxEmptyRect* best = nullptr;
  for (const MaxEmptyRect& m : mers) {
    if (!m.rect.contains_rect(shrunk, tol.eps_geo)) continue;
    if (best == nullptr || m.rect.area() > best->rect.area() + tol.eps_area) best = &m;
  }
  if (best == nullptr) {
    // The uniform inner rectangle is itself empty; some MER must contain it.
    throw std::logic_error("no maximal empty rectangle contains the uniform inner rectangle");
  }
  FixedSolveResult res =
      finish_rect_result(pts, theta, outer, *best, static_cast<int>(mers.size()), tol.eps_geo);
  // Float noise in the MER corners must not perturb the exact optimum width.
  res.width = uniform.width;
  return res;
}

FixedSolveResult min_width_min_area_rect_annulus_fixed(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const std::vector<Point> fpts = frame_points(pts, theta);
  const OrientedRect r = enclosing_rect(pts, theta);
  const std::vector<MaxEmptyRect> mers = enumerate_mers(fpts, r, tol.eps_geo);

  double max_area = 0.0;
  for (const MaxEmptyRect& m : mers) max_area = std::max(max_area, m.rect.area());

  const MaxEmptyRect* best = nullptr;
  double best_width = 0.0;
  for (const MaxEmptyRect& m : mers) {
    if (m.rect.area() < max_area - tol.eps_area) continue;
    const double w = rect_annulus_width(r, m.rect);
    if (best == nullptr || w < best_width - tol.eps_geo) {
      best = &m;
      best_width = w;
    }
  }
  return finish_rect_result(pts, theta, r, *best, static_cast<int>(mers.size()), tol.eps_geo);
}

FixedSolveResult largest_empty_rect_fixed_solve(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const std::vector<Point> fpts = frame_points(pts, theta);
  const OrientedRect r = enclosing_rect(pts, theta);
  const std::vector<MaxEmptyRect> mers = enumerate_mers(fpts, r, tol.eps_geo);
  const MaxEmptyRect inner = largest_empty_rect(fpts, r, tol.eps_geo);
  FixedSolveResult res =
      finish_rect_result(pts, theta, r, inner, static_cast<int>(mers.size()), tol.eps_geo);
  res.width = std::min(inner.rect.width(), inner.rect.height());
  res.area = inner.rect.area();
  return res;
}

FixedSolveResult largest_empty_square_fixed_solve(std::span<const Point> pts, double theta) {
  require_nonempty(pts);
  theta = Orientation::problem(theta).radians();
  const Tolerances tol = Tolerances::for_points(pts);
  const std::vector<Point> fpts = frame_points(pts, theta);
  const OrientedRect r = enclosing_rect(pts, theta);
  const OrientedRect sq = largest_empty_square_fixed(fpts, r, tol.eps_geo);

  FixedSolveResult res;
  res.annulus = make_rect_annulus(r, sq);
  res.width = sq.width();  // the square side
  res.area = sq.area();
  res.outer_supports = boundary_supports(fpts, r, tol.eps_geo);
  res.inner_supports = boundary_supports(fpts, sq, tol.eps_geo);
  res.degenerate = std::min(r.width(), r.height()) <= tol.eps_geo;
  res.mer_count = static_cast<int>(enumerate_mers(fpts, r, tol.eps_geo).size());
  return res;
}

FixedSolveResult solve_fixed(std::span<const Point> pts, double theta, Shape shape,
                             Objective objective) {
  switch (shape) {
    case Shape::square:
      switch (objective) {
        case Objective::width:
        case Objective::area_width:
          return min_width_square_annulus_fixed(pts, theta);
        case Objective::area:
        case Objective::width_area:
          return min_area_square_annulus_fixed(pts, theta);
        default:
          break;
      }
      break;
    case Shape::uniform_rect:
      if (objective != Objective::largest) return uniform_rect_annulus_fixed(pts, theta);
      break;
    case Shape::rect:
      switch (objective) {
        case Objective::width:
          return uniform_rect_annulus_fixed(pts, theta);
        case Objective::area:
          return min_area_rect_annulus_fixed(pts, theta);
        case Objective::area_width:
          return min_area_min_width_rect_annulus_fixed(pts, theta);
        case Objective::width_area:
          return min_width_min_area_rect_annulus_fixed(pts, theta);
        default:
          break;
      }
      break;
    case Shape::empty_rect:
      if (objective == Objective::largest) return largest_empty_rect_fixed_solve(pts, theta);
      break;
    case Shape::empty_square:
      if (objective == Objective::largest) return largest_empty_square_fixed_solve(pts, theta);
      break;
  }
  throw std::invalid_argument("unsupported shape/objective combination");
}

}  // namespace annulus
