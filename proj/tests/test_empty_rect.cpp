#include <doctest.h>

#include <algorithm>
#include <random>

#include "annulus/empty_rect.hpp"
#include "annulus/oracle.hpp"
#include "test_util.hpp"

using namespace annulus;

namespace {

OrientedRect unit_box() { return OrientedRect(Orientation::problem(0.0), 0, 1, 0, 1); }

bool same_rect_sets(const std::vector<MaxEmptyRect>& got, const std::vector<OracleRect>& want,
                    double eps) {
  if (got.size() != want.size()) return false;
  for (size_t i = 0; i < got.size(); ++i) {  // both sides are sorted lexicographically
    const OrientedRect& g = got[i].rect;
    const OracleRect& w = want[i];
    if (std::abs(g.lo_x - w.lo_x) > eps || std::abs(g.hi_x - w.hi_x) > eps ||
        std::abs(g.lo_y - w.lo_y) > eps || std::abs(g.hi_y - w.hi_y) > eps) {
      return false;
    }
  }
  return true;
}

void check_mer_validity(const std::vector<Point>& pts, const OrientedRect& box,
                        const std::vector<MaxEmptyRect>& mers, double eps) {
  for (const MaxEmptyRect& m : mers) {
    CHECK(box.contains_rect(m.rect, eps));
    for (const Point& p : pts) {
      const bool interior = p.x > m.rect.lo_x + eps && p.x < m.rect.hi_x - eps &&
                            p.y > m.rect.lo_y + eps && p.y < m.rect.hi_y - eps;
      CHECK_FALSE(interior);
    }
    // Side supports: box side or a point on the side.
    auto on_vertical = [&](int idx, double x) {
      return idx == kBoxSide || std::abs(pts[idx].x - x) <= eps;
    };
    auto on_horizontal = [&](int idx, double y) {
      return idx == kBoxSide || std::abs(pts[idx].y - y) <= eps;
    };
    CHECK(on_vertical(m.left, m.rect.lo_x));
    CHECK(on_vertical(m.right, m.rect.hi_x));
    CHECK(on_horizontal(m.bottom, m.rect.lo_y));
    CHECK(on_horizontal(m.top, m.rect.hi_y));
  }
}

}  // namespace

TEST_CASE("no points: the box itself") {
  const auto mers = enumerate_mers({}, unit_box(), 1e-9);
  REQUIRE(mers.size() == 1);
  CHECK(mers[0].rect.area() == doctest::Approx(1.0));
  CHECK(mers[0].top == kBoxSide);
}

TEST_CASE("single center point: the four strips") {
  const std::vector<Point> pts = {{0.5, 0.5}};
  const auto mers = enumerate_mers(pts, unit_box(), 1e-9);
  const auto want = oracle_mers(pts, 0, 1, 0, 1);
  REQUIRE(want.size() == 4);
  CHECK(same_rect_sets(mers, want, 1e-9));
  const MaxEmptyRect best = largest_empty_rect(pts, unit_box(), 1e-9);
  CHECK(best.rect.area() == doctest::Approx(0.5));
}

TEST_CASE("two diagonal points: eight maximal rectangles, largest 0.49") {
  // Four strips, two 0.7x0.7 corner rectangles, and the full-height and
  // full-width corridors between the points.
  const std::vector<Point> pts = {{0.3, 0.3}, {0.7, 0.7}};
  const auto mers = enumerate_mers(pts, unit_box(), 1e-9);
  const auto want = oracle_mers(pts, 0, 1, 0, 1);
  REQUIRE(want.size() == 8);
  CHECK(same_rect_sets(mers, want, 1e-9));
  CHECK(largest_empty_rect(pts, unit_box(), 1e-9).rect.area() == doctest::Approx(0.49));
}

TEST_CASE("point outside the box is rejected") {
  const std::vector<Point> pts = {{1.5, 0.5}};
  CHECK_THROWS_AS(enumerate_mers(pts, unit_box(), 1e-9), std::invalid_argument);
}

TEST_CASE("off-center point strip") {
  const std::vector<Point> pts = {{0.25, 0.5}};
  const MaxEmptyRect best = largest_empty_rect(pts, unit_box(), 1e-9);
  CHECK(best.rect.area() == doctest::Approx(0.75));
  CHECK(best.rect.lo_x == doctest::Approx(0.25));
}

TEST_CASE("largest empty squares for the known instances") {
  const std::vector<Point> center = {{0.5, 0.5}};
  const OrientedRect s1 = largest_empty_square_fixed(center, unit_box(), 1e-9);
  CHECK(s1.width() == doctest::Approx(0.5));
  CHECK(s1.area() == doctest::Approx(0.25));

  const OrientedRect s2 = largest_empty_square_fixed({}, unit_box(), 1e-9);
  CHECK(s2.width() == doctest::Approx(1.0));

  const std::vector<Point> two = {{0.3, 0.3}, {0.7, 0.7}};
  const OrientedRect s3 = largest_empty_square_fixed(two, unit_box(), 1e-9);
  CHECK(s3.width() == doctest::Approx(0.7));
}

TEST_CASE("random instances match the exhaustive oracle exactly") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 120; ++it) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto pts = testutil::random_points(rng, n);
    const auto mers = enumerate_mers(pts, unit_box(), 1e-9);
    const auto want = oracle_mers(pts, 0, 1, 0, 1);
    CHECK(same_rect_sets(mers, want, 1e-9));
    check_mer_validity(pts, unit_box(), mers, 1e-9);
    CHECK(static_cast<int>(mers.size()) >= n + 1);
  }
}

TEST_CASE("points on the box boundary act as supports, not blockers") {
  // Two boundary points and one interior point.
  const std::vector<Point> pts = {{0.0, 0.4}, {0.6, 1.0}, {0.5, 0.5}};
  const auto mers = enumerate_mers(pts, unit_box(), 1e-9);
  const auto want = oracle_mers(pts, 0, 1, 0, 1);
  CHECK(same_rect_sets(mers, want, 1e-9));
}

TEST_CASE("shared coordinates (grid-aligned points)") {
  const std::vector<Point> pts = {{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75},
                                  {0.5, 0.5}};
  const auto mers = enumerate_mers(pts, unit_box(), 1e-9);
  const auto want = oracle_mers(pts, 0, 1, 0, 1);
  CHECK(same_rect_sets(mers, want, 1e-9));
  check_mer_validity(pts, unit_box(), mers, 1e-9);
}

TEST_CASE("degenerate box returns itself") {
  const OrientedRect line(Orientation::problem(0.0), 0, 1, 0, 0);
  const std::vector<Point> pts = {{0.3, 0.0}, {0.8, 0.0}};
  const auto mers = enumerate_mers(pts, line, 1e-9);
  REQUIRE(mers.size() == 1);
  CHECK(mers[0].rect.area() == doctest::Approx(0.0));
}

TEST_CASE("largest empty square matches a placement brute force") {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 10; ++it) {
    const auto pts = testutil::random_points(rng, 5);
    const OrientedRect sq = largest_empty_square_fixed(pts, unit_box(), 1e-9);

    // Grid of candidate centers with binary search on the side length.
    auto fits = [&](double cx, double cy, double s) {
      const double h = s / 2;
      if (cx - h < -1e-12 || cx + h > 1 + 1e-12 || cy - h < -1e-12 || cy + h > 1 + 1e-12) {
        return false;
      }
      for (const Point& p : pts) {
        if (p.x > cx - h + 1e-12 && p.x < cx + h - 1e-12 && p.y > cy - h + 1e-12 &&
            p.y < cy + h - 1e-12) {
          return false;
        }
      }
      return true;
    };
    double best = 0.0;
    const int g = 100;
    for (int i = 0; i <= g; ++i) {
      for (int j = 0; j <= g; ++j) {
        const double cx = static_cast<double>(i) / g;
        const double cy = static_cast<double>(j) / g;
        double lo = 0.0, hi = 1.0;
        for (int b = 0; b < 40; ++b) {
          const double mid = (lo + hi) / 2;
          if (fits(cx, cy, mid)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        best = std::max(best, lo);
      }
    }
    CHECK(sq.width() >= best - 1e-6);  // the exact square dominates the sampled one
    CHECK(sq.width() <= best + 2.0 / g + 1e-6);
  }
}
