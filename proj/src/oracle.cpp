#include "annulus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace annulus {

namespace {

constexpr double kTinyRel = 1e-12;

bool rect_equal(const OracleRect& a, const OracleRect& b, double eps) {
  return std::abs(a.lo_x - b.lo_x) <= eps && std::abs(a.hi_x - b.hi_x) <= eps &&
         std::abs(a.lo_y - b.lo_y) <= eps && std::abs(a.hi_y - b.hi_y) <= eps;
}

struct FrameBounds {
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  double width() const { return hi_x - lo_x; }
  double height() const { return hi_y - lo_y; }
};

FrameBounds scan_bounds(std::span<const Point> fpts) {
  FrameBounds b;
  b.lo_x = b.hi_x = fpts[0].x;
  b.lo_y = b.hi_y = fpts[0].y;
  for (const Point& p : fpts) {
    b.lo_x = std::min(b.lo_x, p.x);
    b.hi_x = std::max(b.hi_x, p.x);
    b.lo_y = std::min(b.lo_y, p.y);
    b.hi_y = std::max(b.hi_y, p.y);
  }
  return b;
}

std::vector<Point> rotate_all(std::span<const Point> pts, double theta) {
  std::vector<Point> out;
  out.reserve(pts.size());
  const double c = std::cos(theta), s = std::sin(theta);
  for (const Point& p : pts) out.push_back({p.x * c + p.y * s, -p.x * s + p.y * c});
  return out;
}

}  // namespace

std::vector<OracleRect> oracle_mers(std::span<const Point> pts, double box_lo_x, double box_hi_x,
                                    double box_lo_y, double box_hi_y) {
  if (pts.size() > 12) throw std::invalid_argument("oracle_mers is limited to 12 points");

  double span = std::max(box_hi_x - box_lo_x, box_hi_y - box_lo_y);
  for (const Point& p : pts) span = std::max({span, std::abs(p.x), std::abs(p.y)});
  const double eps = kTinyRel * std::max(span, 1.0);

  std::vector<double> xs = {box_lo_x, box_hi_x};
  std::vector<double> ys = {box_lo_y, box_hi_y};
  for (const Point& p : pts) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }

  auto empty_interior = [&](double lx, double hx, double ly, double hy) {
    for (const Point& p : pts) {
      if (p.x > lx + eps && p.x < hx - eps && p.y > ly + eps && p.y < hy - eps) return false;
    }
    return true;
  };
  // A side is pinned if it lies on the box or a point on it has the transverse
  // coordinate strictly inside.
  auto pinned_vertical = [&](double x, double ly, double hy, double box_x) {
    if (std::abs(x - box_x) <= eps) return true;
    for (const Point& p : pts) {
      if (std::abs(p.x - x) <= eps && p.y > ly + eps && p.y < hy - eps) return true;
    }
    return false;
  };
  auto pinned_horizontal = [&](double y, double lx, double hx, double box_y) {
    if (std::abs(y - box_y) <= eps) return true;
    for (const Point& p : pts) {
      if (std::abs(p.y - y) <= eps && p.x > lx + eps && p.x < hx - eps) return true;
    }
    return false;
  };

  std::vector<OracleRect> out;
  for (double lx : xs)
    for (double hx : xs) {
      if (hx - lx <= eps) continue;
      if (lx < box_lo_x - eps || hx > box_hi_x + eps) continue;
      for (double ly : ys)
        for (double hy : ys) {
          if (hy - ly <= eps) continue;
          if (ly < box_lo_y - eps || hy > box_hi_y + eps) continue;
          if (!empty_interior(lx, hx, ly, hy)) continue;
          if (!pinned_vertical(lx, ly, hy, box_lo_x)) continue;
          if (!pinned_vertical(hx, ly, hy, box_hi_x)) continue;
          if (!pinned_horizontal(ly, lx, hx, box_lo_y)) continue;
          if (!pinned_horizontal(hy, lx, hx, box_hi_y)) continue;
          const OracleRect r{lx, hx, ly, hy};
          bool dup = false;
          for (const OracleRect& q : out) {
            if (rect_equal(q, r, eps)) {
              dup = true;
              break;
            }
          }
          if (!dup) out.push_back(r);
        }
    }

  if (out.empty()) {
    // Degenerate box: the box itself is the only maximal empty rectangle.
    out.push_back({box_lo_x, box_hi_x, box_lo_y, box_hi_y});
  }
  std::sort(out.begin(), out.end(), [](const OracleRect& a, const OracleRect& b) {
    if (a.lo_x != b.lo_x) return a.lo_x < b.lo_x;
    if (a.lo_y != b.lo_y) return a.lo_y < b.lo_y;
    if (a.hi_x != b.hi_x) return a.hi_x < b.hi_x;
    return a.hi_y < b.hi_y;
  });
  return out;
}

OracleValue oracle_fixed(std::span<const Point> pts, double theta, Shape shape, Objective objective,
                         const OracleConfig& cfg) {
  cfg.validate();
  if (pts.empty()) throw std::invalid_argument("oracle_fixed requires at least one point");
  if (pts.size() > 12) throw std::invalid_argument("oracle_fixed is limited to 12 points");

  const std::vector<Point> fpts = rotate_all(pts, theta);
  const FrameBounds b = scan_bounds(fpts);
  OracleValue out;

  switch (shape) {
    case Shape::square: {
      const double d = std::max(b.width(), b.height());
      double u0, u1, cross;
      bool horizontal;
      if (b.height() >= b.width()) {
        horizontal = true;
        u0 = b.hi_x - d / 2.0;
        u1 = b.lo_x + d / 2.0;
        cross = (b.lo_y + b.hi_y) / 2.0;
      } else {
        horizontal = false;
        u0 = b.hi_y - d / 2.0;
        u1 = b.lo_y + d / 2.0;
        cross = (b.lo_x + b.hi_x) / 2.0;
      }
      double best_rho = -1.0;
      const int n = cfg.center_samples;
      for (int i = 0; i < n; ++i) {
        const double u = u0 + (u1 - u0) * (n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
        double rho = std::numeric_limits<double>::infinity();
        for (const Point& p : fpts) {
          const double du = (horizontal ? p.x : p.y) - u;
          const double dv = (horizontal ? p.y : p.x) - cross;
          rho = std::min(rho, std::max(std::abs(du), std::abs(dv)));
        }
        best_rho = std::max(best_rho, rho);
      }
      const double inner_r = std::min(best_rho, d / 2.0);
      out.width = d / 2.0 - inner_r;
      out.area = d * d - (2.0 * inner_r) * (2.0 * inner_r);
      out.error_bound = (u1 - u0) / std::max(1, cfg.center_samples - 1);
      break;
    }
    case Shape::uniform_rect: {
      double w = 0.0;
      for (const Point& p : fpts) {
        w = std::max(w, std::min({p.x - b.lo_x, b.hi_x - p.x, p.y - b.lo_y, b.hi_y - p.y}));
      }
      out.width = w;
      const double inner_w = std::max(0.0, b.width() - 2.0 * w);
      const double inner_h = std::max(0.0, b.height() - 2.0 * w);
      out.area = b.width() * b.height() - inner_w * inner_h;
      break;
    }
    case Shape::rect: {
      const std::vector<OracleRect> mers = oracle_mers(fpts, b.lo_x, b.hi_x, b.lo_y, b.hi_y);
      const double scale = std::max(1.0, std::max(b.width(), b.height()));
      const double area_tol = kTinyRel * scale * scale;
      auto annulus_width = [&](const OracleRect& m) {
        return std::max({b.hi_y - m.hi_y, m.lo_y - b.lo_y, m.lo_x - b.lo_x, b.hi_x - m.hi_x});
      };
      if (objective == Objective::area || objective == Objective::width_area) {
        double best_area = -1.0;
        for (const OracleRect& m : mers) best_area = std::max(best_area, m.area());
        double best_w = std::numeric_limits<double>::infinity();
        for (const OracleRect& m : mers) {
          if (m.area() >= best_area - area_tol) best_w = std::min(best_w, annulus_width(m));
        }
        out.area = b.width() * b.height() - best_area;
        out.width = best_w;
      } else {
        // width / area_width: uniform width and the best area at that width.
        double w = 0.0;
        for (const Point& p : fpts) {
          w = std::max(w, std::min({p.x - b.lo_x, b.hi_x - p.x, p.y - b.lo_y, b.hi_y - p.y}));
        }
        out.width = w;
        const OracleRect shrunk{b.lo_x + w, std::max(b.lo_x + w, b.hi_x - w), b.lo_y + w,
                                std::max(b.lo_y + w, b.hi_y - w)};
        const double tol = kTinyRel * scale;
        double best_area = -1.0;
        for (const OracleRect& m : mers) {
          const bool contains = m.lo_x <= shrunk.lo_x + tol && m.hi_x >= shrunk.hi_x - tol &&
                                m.lo_y <= shrunk.lo_y + tol && m.hi_y >= shrunk.hi_y - tol;
          if (contains) best_area = std::max(best_area, m.area());
        }
        out.area = b.width() * b.height() - best_area;
      }
      break;
    }
    case Shape::empty_rect: {
      const std::vector<OracleRect> mers = oracle_mers(fpts, b.lo_x, b.hi_x, b.lo_y, b.hi_y);
      double best = 0.0;
      for (const OracleRect& m : mers) best = std::max(best, m.area());
      out.area = best;
      out.side = std::sqrt(best);
      break;
    }
    case Shape::empty_square: {
      const std::vector<OracleRect> mers = oracle_mers(fpts, b.lo_x, b.hi_x, b.lo_y, b.hi_y);
      double best = 0.0;
      for (const OracleRect& m : mers) {
        best = std::max(best, std::min(m.hi_x - m.lo_x, m.hi_y - m.lo_y));
      }
      out.side = best;
      out.area = best * best;
      break;
    }
  }
  return out;
}

OracleGridValue oracle_any(std::span<const Point> pts, Shape shape, Objective objective,
                           const OracleConfig& cfg) {
  cfg.validate();
  if (pts.size() > 12) throw std::invalid_argument("oracle_any is limited to 12 points");

  const bool maximize = shape == Shape::empty_rect || shape == Shape::empty_square;
  const int n = cfg.theta_samples;
  const double step = kHalfPi / n;

  // Primary objective on the grid.
  auto primary_of = [&](const FixedSolveResult& r) {
    if (shape == Shape::empty_square || shape == Shape::empty_rect) return maximize ? r.area : 0.0;
    switch (objective) {
      case Objective::width:
      case Objective::area_width:
        return r.width;
      default:
        return r.area;
    }
  };
  auto secondary_of = [&](const FixedSolveResult& r) {
    switch (objective) {
      case Objective::area_width:
        return r.area;
      case Objective::width_area:
        return r.width;
      default:
        return 0.0;
    }
  };

  std::vector<double> primary(n), secondary(n);
  for (int i = 0; i < n; ++i) {
    const FixedSolveResult r = solve_fixed(pts, i * step, shape, objective);
    primary[i] = shape == Shape::empty_square ? r.width : primary_of(r);
    secondary[i] = secondary_of(r);
  }

  OracleGridValue out;
  out.grid_step = step;
  int best_i = 0;
  for (int i = 1; i < n; ++i) {
    if (maximize ? primary[i] > primary[best_i] : primary[i] < primary[best_i]) best_i = i;
  }
  out.value = primary[best_i];
  out.theta_at = best_i * step;

  if (objective == Objective::area_width || objective == Objective::width_area) {
    // Two-stage: best secondary among grid orientations near the primary optimum.
    const double d = bbox_diameter(pts);
    const double lip = (objective == Objective::width_area ? 4.0 * d * d : 2.0 * d);
    const double slack = lip * step + 1e-9 * std::max(1.0, d * d);
    double best_sec = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const bool near = maximize ? primary[i] >= out.value - slack : primary[i] <= out.value + slack;
      if (near) best_sec = std::min(best_sec, secondary[i]);
    }
    out.secondary = best_sec;
  }
  return out;
}

}  // namespace annulus
