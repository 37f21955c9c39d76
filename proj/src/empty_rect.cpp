#include "annulus/empty_rect.hpp"

#include <algorithm>

namespace annulus {

namespace {

struct FrameRect {
  double lo_x, hi_x, lo_y, hi_y;
  int top, bottom, left, right;
};

// Points grouped by equal y, ordered by descending y.
struct Level {
  double y;
  std::vector<int> idx;
};

std::vector<Level> build_levels(std::span<const Point> pts) {
  std::vector<int> order(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return pts[a].y > pts[b].y || (pts[a].y == pts[b].y && a < b);
  });
  std::vector<Level> levels;
  for (int i : order) {
    if (!levels.empty() && levels.back().y == pts[i].y) {
      levels.back().idx.push_back(i);
    } else {
      levels.push_back({pts[i].y, {i}});
    }
  }
  return levels;
}

// Rectangles whose top (dir=-1) or bottom (dir=+1) side passes through anchor.
// Sweeps away from the anchor, shrinking the admissible x-window at every
// point met, and emits one candidate per level where the window is hit.
void anchored_sweep(std::span<const Point> pts, const std::vector<Level>& levels, int anchor,
                    double x0, double x1, double y_far, int dir, std::vector<FrameRect>& out) {
  const double ax = pts[anchor].x;
  const double ay = pts[anchor].y;
  double lo = x0, hi = x1;
  int lo_support = kBoxSide, hi_support = kBoxSide;
  bool stopped = false;

  auto emit = [&](double level_y, int far_support) {
    FrameRect r;
    r.lo_x = lo;
    r.hi_x = hi;
    r.left = lo_support;
    r.right = hi_support;
    if (dir < 0) {
      r.lo_y = level_y;
      r.hi_y = ay;
      r.top = anchor;
      r.bottom = far_support;
    } else {
      r.lo_y = ay;
      r.hi_y = level_y;
      r.bottom = anchor;
      r.top = far_support;
    }
    out.push_back(r);
  };

  auto scan = [&](const Level& lev) {
    std::vector<int> inside;
    for (int i : lev.idx) {
      if (pts[i].x > lo && pts[i].x < hi) inside.push_back(i);
    }
    if (inside.empty()) return;
    emit(lev.y, inside.front());
    double new_lo = lo, new_hi = hi;
    int new_lo_s = lo_support, new_hi_s = hi_support;
    for (int i : inside) {
      if (pts[i].x == ax) {
        stopped = true;
      } else if (pts[i].x < ax) {
        if (pts[i].x > new_lo) { new_lo = pts[i].x; new_lo_s = i; }
      } else {
        if (pts[i].x < new_hi) { new_hi = pts[i].x; new_hi_s = i; }
      }
    }
    lo = new_lo; hi = new_hi;
    lo_support = new_lo_s; hi_support = new_hi_s;
  };

  // Points on the far box edge are never interior and never block a side, so
  // their levels are skipped outright.
  if (dir < 0) {
    for (const Level& lev : levels) {
      if (lev.y >= ay || lev.y <= y_far) continue;
      scan(lev);
      if (stopped) return;
    }
  } else {
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
      if (it->y <= ay || it->y >= y_far) continue;
      scan(*it);
      if (stopped) return;
    }
  }
  emit(y_far, kBoxSide);
}

}  // namespace

std::vector<MaxEmptyRect> enumerate_mers(std::span<const Point> pts, const OrientedRect& box,
                                         double eps) {
  for (const Point& p : pts) {
    if (!box.contains_frame(p, eps)) {
      throw std::invalid_argument("point outside the bounding rectangle");
    }
  }
  const double x0 = box.lo_x, x1 = box.hi_x, y0 = box.lo_y, y1 = box.hi_y;

  std::vector<FrameRect> raw;
  if (box.width() <= eps || box.height() <= eps) {
    raw.push_back({x0, x1, y0, y1, kBoxSide, kBoxSide, kBoxSide, kBoxSide});
  } else {
    const std::vector<Level> levels = build_levels(pts);

    // Only strictly interior points can anchor a side; rectangles whose point
    // supports all lie on box edges are full-height corridors handled below.
    for (size_t i = 0; i < pts.size(); ++i) {
      const Point& p = pts[i];
      if (p.x <= x0 || p.x >= x1 || p.y <= y0 || p.y >= y1) continue;
      anchored_sweep(pts, levels, static_cast<int>(i), x0, x1, y0, -1, raw);
      anchored_sweep(pts, levels, static_cast<int>(i), x0, x1, y1, +1, raw);
    }

    // Full-height corridors between x-consecutive strictly interior points.
    std::vector<std::pair<double, int>> xs = {{x0, kBoxSide}, {x1, kBoxSide}};
    for (size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].y > y0 && pts[i].y < y1) xs.push_back({pts[i].x, static_cast<int>(i)});
    }
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      if (xs[i + 1].first > xs[i].first) {
        raw.push_back({xs[i].first, xs[i + 1].first, y0, y1, kBoxSide, kBoxSide, xs[i].second,
                       xs[i + 1].second});
      }
    }
  }

  // Sides lying on the box report the box marker even when a wall point sits
  // on them; downstream orientation sweeps key on this convention.
  for (FrameRect& r : raw) {
    if (std::abs(r.lo_x - x0) <= eps) r.left = kBoxSide;
    if (std::abs(r.hi_x - x1) <= eps) r.right = kBoxSide;
    if (std::abs(r.lo_y - y0) <= eps) r.bottom = kBoxSide;
    if (std::abs(r.hi_y - y1) <= eps) r.top = kBoxSide;
  }

  // Deduplicate by geometry.
  std::sort(raw.begin(), raw.end(), [](const FrameRect& a, const FrameRect& b) {
    if (a.lo_x != b.lo_x) return a.lo_x < b.lo_x;
    if (a.lo_y != b.lo_y) return a.lo_y < b.lo_y;
    if (a.hi_x != b.hi_x) return a.hi_x < b.hi_x;
    return a.hi_y < b.hi_y;
  });
  std::vector<MaxEmptyRect> out;
  for (const FrameRect& r : raw) {
    if (!out.empty()) {
      const OrientedRect& prev = out.back().rect;
      if (std::abs(prev.lo_x - r.lo_x) <= eps && std::abs(prev.hi_x - r.hi_x) <= eps &&
          std::abs(prev.lo_y - r.lo_y) <= eps && std::abs(prev.hi_y - r.hi_y) <= eps) {
        continue;
      }
    }
    MaxEmptyRect m;
    m.rect = OrientedRect(box.theta, r.lo_x, r.hi_x, r.lo_y, r.hi_y);
    m.top = r.top;
    m.bottom = r.bottom;
    m.left = r.left;
    m.right = r.right;
    out.push_back(m);
  }
  return out;
}

MaxEmptyRect largest_empty_rect(std::span<const Point> pts, const OrientedRect& box, double eps) {
  const std::vector<MaxEmptyRect> mers = enumerate_mers(pts, box, eps);
  const MaxEmptyRect* best = &mers.front();
  for (const MaxEmptyRect& m : mers) {
    if (m.rect.area() > best->rect.area()) best = &m;
  }
  // Enumeration order is already lexicographic, so the first max-area hit wins.
  return *best;
}

OrientedRect largest_empty_square_fixed(std::span<const Point> pts, const OrientedRect& box,
                                        double eps) {
  const std::vector<MaxEmptyRect> mers = enumerate_mers(pts, box, eps);
  double best_side = -1.0;
  OrientedRect best;
  for (const MaxEmptyRect& m : mers) {
    const double side = std::min(m.rect.width(), m.rect.height());
    if (side > best_side) {
      best_side = side;
      best = OrientedRect(box.theta, m.rect.lo_x, m.rect.lo_x + side, m.rect.lo_y,
                          m.rect.lo_y + side);
    }
  }
  return best;
}

}  // namespace annulus
