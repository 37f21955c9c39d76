#include "annulus/calipers.hpp"

#include <algorithm>
#include <cmath>

namespace annulus {

namespace {
constexpr double kCutEps = 1e-12;
}

Sinusoid frame_dx_sinusoid(Point p, Point q) {
  // x'(p) - x'(q) = dx cos(theta) + dy sin(theta)
  return Sinusoid::from_cos_sin(p.x - q.x, p.y - q.y);
}

Sinusoid frame_dy_sinusoid(Point p, Point q) {
  // y'(p) - y'(q) = -dx sin(theta) + dy cos(theta)
  return Sinusoid::from_cos_sin(p.y - q.y, -(p.x - q.x));
}

ExtremeTuple extremes(std::span<const Point> pts, double theta) {
  if (pts.empty()) throw std::invalid_argument("extremes of an empty point set");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  ExtremeTuple t;
  double best_t, best_b, best_l, best_r;
  best_t = best_b = -pts[0].x * s + pts[0].y * c;
  best_l = best_r = pts[0].x * c + pts[0].y * s;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    const double fx = pts[i].x * c + pts[i].y * s;
    const double fy = -pts[i].x * s + pts[i].y * c;
    if (fy > best_t) { best_t = fy; t.top = i; }
    if (fy < best_b) { best_b = fy; t.bottom = i; }
    if (fx < best_l) { best_l = fx; t.left = i; }
    if (fx > best_r) { best_r = fx; t.right = i; }
  }
  return t;
}

OrientedRect enclosing_rect(std::span<const Point> pts, double theta) {
  if (pts.empty()) throw std::invalid_argument("enclosing rect of an empty point set");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double lx, hx, ly, hy;
  lx = hx = pts[0].x * c + pts[0].y * s;
  ly = hy = -pts[0].x * s + pts[0].y * c;
  for (const Point& p : pts) {
    const double fx = p.x * c + p.y * s;
    const double fy = -p.x * s + p.y * c;
    lx = std::min(lx, fx);
    hx = std::max(hx, fx);
    ly = std::min(ly, fy);
    hy = std::max(hy, fy);
  }
  return OrientedRect(Orientation::problem(theta), lx, hx, ly, hy);
}

std::vector<PrimaryInterval> primary_intervals(std::span<const Point> pts) {
  if (pts.size() < 2) throw std::invalid_argument("primary intervals need at least two points");
  const Tolerances tol = Tolerances::for_points(pts);

  // Each point pair ties in frame-x or frame-y at exactly one orientation in
  // [0, pi/2): the segment orientation reduced modulo pi/2.
  std::vector<double> cuts = {0.0, kHalfPi};
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[j].x - pts[i].x;
      const double dy = pts[j].y - pts[i].y;
      if (dx == 0.0 && dy == 0.0) continue;
      const double t = normalize_angle(std::atan2(dy, dx), kHalfPi);
      if (t > kCutEps && t < kHalfPi - kCutEps) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < kCutEps; }),
             cuts.end());

  // Tuple-constant intervals, merging neighbors that share the tuple.
  std::vector<PrimaryInterval> tuple_intervals;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const ExtremeTuple tup = extremes(pts, (lo + hi) / 2.0);
    if (!tuple_intervals.empty() && tuple_intervals.back().tuple == tup) {
      tuple_intervals.back().hi = hi;
    } else {
      tuple_intervals.push_back({lo, hi, tup, DBranch::height, false});
    }
  }

  // Refine by the d-branch: split where height(theta) == width(theta).
  std::vector<PrimaryInterval> out;
  for (const PrimaryInterval& iv : tuple_intervals) {
    const Sinusoid h = frame_dy_sinusoid(pts[iv.tuple.top], pts[iv.tuple.bottom]);
    const Sinusoid w = frame_dx_sinusoid(pts[iv.tuple.right], pts[iv.tuple.left]);
    const Sinusoid diff = add(h, w.negated());

    if (diff.amplitude() < 1e-12 * std::max(tol.diameter, 1e-300)) {
      PrimaryInterval tied = iv;
      tied.branch_tie = true;
      tied.d_branch = DBranch::height;
      out.push_back(tied);
      continue;
    }

    std::vector<double> splits;
    for (double r : diff.roots(iv.lo, iv.hi)) {
      if (r > iv.lo + kCutEps && r < iv.hi - kCutEps) splits.push_back(r);
    }
    double lo = iv.lo;
    auto push_piece = [&](double a, double b) {
      PrimaryInterval piece = iv;
      piece.lo = a;
      piece.hi = b;
      const double mid = (a + b) / 2.0;
      piece.d_branch = diff.value(mid) >= 0.0 ? DBranch::height : DBranch::width;
      out.push_back(piece);
    };
    for (double r : splits) {
      push_piece(lo, r);
      lo = r;
    }
    push_piece(lo, iv.hi);
  }
  return out;
}

double square_side(std::span<const Point> pts, double theta) {
  const OrientedRect r = enclosing_rect(pts, theta);
  return std::max(r.width(), r.height());
}

CenterSegment center_segment(std::span<const Point> pts, double theta) {
  const OrientedRect r = enclosing_rect(pts, theta);
  const Point c = r.frame_center();
  CenterSegment seg;
  seg.theta = theta;
  if (r.height() >= r.width()) {
    // Tall rectangle: the square slides along the frame x axis.
    const double d = r.height();
    seg.along_theta = true;
    seg.length = r.height() - r.width();
    seg.a = from_frame({r.hi_x - d / 2.0, c.y}, theta);
    seg.b = from_frame({r.lo_x + d / 2.0, c.y}, theta);
  } else {
    const double d = r.width();
    seg.along_theta = false;
    seg.length = r.width() - r.height();
    seg.a = from_frame({c.x, r.hi_y - d / 2.0}, theta);
    seg.b = from_frame({c.x, r.lo_y + d / 2.0}, theta);
  }
  return seg;
}

}  // namespace annulus
