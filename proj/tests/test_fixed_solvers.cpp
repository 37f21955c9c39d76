#include <doctest.h>

#include <cmath>
#include <random>

#include "annulus/fixed_solvers.hpp"
#include "annulus/oracle.hpp"
#include "test_util.hpp"

using namespace annulus;
using testutil::corners_plus_center;
using testutil::p5;
using testutil::unit_square_corners;

namespace {

void check_containment(const std::vector<Point>& pts, const FixedSolveResult& r, double theta) {
  const Tolerances tol = Tolerances::for_points(pts);
  for (const Point& p : pts) {
    CHECK(r.annulus.covers_frame(to_frame(p, theta), tol.eps_geo));
  }
}

}  // namespace

TEST_CASE("square annulus golden instances") {
  const auto cc = corners_plus_center();
  const FixedSolveResult r = min_width_square_annulus_fixed(cc, 0.0);
  CHECK(r.width == doctest::Approx(0.5));
  CHECK(r.annulus.outer_radius == doctest::Approx(0.5));
  CHECK(r.annulus.inner_radius == doctest::Approx(0.0));
  CHECK(r.area == doctest::Approx(1.0));
  check_containment(cc, r, 0.0);

  const auto sq = unit_square_corners();
  const FixedSolveResult r2 = min_width_square_annulus_fixed(sq, 0.0);
  CHECK(r2.width == doctest::Approx(0.0));
  CHECK(r2.area == doctest::Approx(0.0));

  const auto P = p5();
  const FixedSolveResult r3 = min_width_square_annulus_fixed(P, 0.0);
  CHECK(r3.width == doctest::Approx(1.0));
  CHECK(min_area_square_annulus_fixed(P, 0.0).area == doctest::Approx(12.0));
  check_containment(P, r3, 0.0);

  CHECK(min_area_square_annulus_fixed(cc, 0.0).area == doctest::Approx(1.0));
  CHECK_THROWS_AS(min_width_square_annulus_fixed(std::vector<Point>{}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("square solver matches the center-grid oracle") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ut(0, kHalfPi);
  OracleConfig cfg;
  cfg.center_samples = 20000;
  for (int it = 0; it < 40; ++it) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const auto pts = testutil::random_points(rng, n);
    const double theta = ut(rng);
    const FixedSolveResult r = min_width_square_annulus_fixed(pts, theta);
    const OracleValue o = oracle_fixed(pts, theta, Shape::square, Objective::width, cfg);
    CHECK(r.width <= o.width + 1e-12);  // the exact optimum dominates the grid
    CHECK(r.width >= o.width - o.error_bound - 1e-12);
    check_containment(pts, r, theta);
  }
}

TEST_CASE("uniform annulus golden instances and formula") {
  const auto cc = corners_plus_center();
  const FixedSolveResult r = uniform_rect_annulus_fixed(cc, 0.0);
  CHECK(r.width == doctest::Approx(0.5));
  CHECK(r.area == doctest::Approx(1.0));  // peri*w - 4w^2 = 4*0.5 - 4*0.25

  CHECK(uniform_rect_annulus_fixed(unit_square_corners(), 0.0).width == doctest::Approx(0.0));

  const auto P = p5();
  const FixedSolveResult r3 = uniform_rect_annulus_fixed(P, 0.0);
  CHECK(r3.width == doctest::Approx(1.0));
  CHECK(r3.area == doctest::Approx(8.0));
  CHECK(r3.annulus.inner.height() == doctest::Approx(0.0));  // degenerate inner segment
  check_containment(P, r3, 0.0);
}

TEST_CASE("uniform width is bounded by half the smaller side") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> ut(0, kHalfPi);
  for (int it = 0; it < 200; ++it) {
    const auto pts = testutil::random_points(rng, 2 + static_cast<int>(rng() % 10));
    const double theta = ut(rng);
    const FixedSolveResult r = uniform_rect_annulus_fixed(pts, theta);
    const double min_side = std::min(r.annulus.outer.width(), r.annulus.outer.height());
    CHECK(r.width <= min_side / 2 + 1e-12);
  }
}

TEST_CASE("min-area rect annulus golden instances") {
  const auto cc = corners_plus_center();
  const FixedSolveResult r = min_area_rect_annulus_fixed(cc, 0.0);
  CHECK(r.area == doctest::Approx(0.5));
  check_containment(cc, r, 0.0);

  CHECK(min_area_rect_annulus_fixed(unit_square_corners(), 0.0).area == doctest::Approx(0.0));
}

TEST_CASE("min-area rect annulus matches the exhaustive oracle") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> ut(0, kHalfPi);
  for (int it = 0; it < 30; ++it) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const auto pts = testutil::random_points(rng, n);
    const double theta = ut(rng);
    const FixedSolveResult r = min_area_rect_annulus_fixed(pts, theta);
    const OracleValue o = oracle_fixed(pts, theta, Shape::rect, Objective::area);
    CHECK(r.area == doctest::Approx(o.area).epsilon(1e-12));
  }
}

TEST_CASE("bicriteria rect annuli on the golden instance") {
  const auto cc = corners_plus_center();
  const FixedSolveResult aw = min_area_min_width_rect_annulus_fixed(cc, 0.0);
  CHECK(aw.width == doctest::Approx(0.5));
  CHECK(aw.area == doctest::Approx(0.5));
  // Lexicographically smallest tie: the left strip.
  CHECK(aw.annulus.inner.lo_x == doctest::Approx(0.0));
  CHECK(aw.annulus.inner.hi_x == doctest::Approx(0.5));

  const FixedSolveResult wa = min_width_min_area_rect_annulus_fixed(cc, 0.0);
  CHECK(wa.area == doctest::Approx(0.5));
  CHECK(wa.width == doctest::Approx(0.5));

  const auto sq = unit_square_corners();
  CHECK(min_area_min_width_rect_annulus_fixed(sq, 0.0).width == doctest::Approx(0.0));
  CHECK(min_area_min_width_rect_annulus_fixed(sq, 0.0).area == doctest::Approx(0.0));
  CHECK(min_width_min_area_rect_annulus_fixed(sq, 0.0).area == doctest::Approx(0.0));

  const auto P = p5();
  const FixedSolveResult aw5 = min_area_min_width_rect_annulus_fixed(P, 0.0);
  CHECK(aw5.width == doctest::Approx(1.0));
  const OracleValue o5 = oracle_fixed(P, 0.0, Shape::rect, Objective::area_width);
  CHECK(aw5.area == doctest::Approx(o5.area).epsilon(1e-12));
  // The inner rectangle must contain the degenerate uniform inner segment.
  CHECK(aw5.annulus.inner.lo_x <= 1.0 + 1e-9);
  CHECK(aw5.annulus.inner.hi_x >= 3.0 - 1e-9);
}

TEST_CASE("bicriteria rect annuli match the exhaustive oracle on random instances") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> ut(0, kHalfPi);
  for (int it = 0; it < 30; ++it) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const auto pts = testutil::random_points(rng, n);
    const double theta = ut(rng);

    const FixedSolveResult aw = min_area_min_width_rect_annulus_fixed(pts, theta);
    const OracleValue oaw = oracle_fixed(pts, theta, Shape::rect, Objective::area_width);
    CHECK(aw.width == doctest::Approx(oaw.width).epsilon(1e-12));
    CHECK(aw.area == doctest::Approx(oaw.area).epsilon(1e-12));

    const FixedSolveResult wa = min_width_min_area_rect_annulus_fixed(pts, theta);
    const OracleValue owa = oracle_fixed(pts, theta, Shape::rect, Objective::width_area);
    CHECK(wa.area == doctest::Approx(owa.area).epsilon(1e-12));
    CHECK(wa.width == doctest::Approx(owa.width).epsilon(1e-12));

    // Ordering relations between the variants.
    const FixedSolveResult a = min_area_rect_annulus_fixed(pts, theta);
    const FixedSolveResult u = uniform_rect_annulus_fixed(pts, theta);
    CHECK(a.area <= aw.area + 1e-12);
    CHECK(aw.width == doctest::Approx(u.width).epsilon(1e-12));
    CHECK(wa.width >= aw.width - 1e-12);
  }
}

TEST_CASE("width/area equivalence of the two square solvers") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> ut(0, kHalfPi);
  for (int it = 0; it < 100; ++it) {
    const auto pts = testutil::random_points(rng, 2 + static_cast<int>(rng() % 10));
    const double theta = ut(rng);
    const FixedSolveResult w = min_width_square_annulus_fixed(pts, theta);
    const FixedSolveResult a = min_area_square_annulus_fixed(pts, theta);
    CHECK(w.width == doctest::Approx(a.width).epsilon(1e-12));
    CHECK(w.area == doctest::Approx(a.area).epsilon(1e-12));
  }
}

TEST_CASE("dominance chain at a fixed orientation") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> ut(0, kHalfPi);
  for (int it = 0; it < 100; ++it) {
    const auto pts = testutil::random_points(rng, 3 + static_cast<int>(rng() % 8));
    const double theta = ut(rng);
    const double rect_area = min_area_rect_annulus_fixed(pts, theta).area;
    const double uniform_area = uniform_rect_annulus_fixed(pts, theta).area;
    const double square_area = min_area_square_annulus_fixed(pts, theta).area;
    CHECK(rect_area <= uniform_area + 1e-9);
    CHECK(uniform_area <= square_area + 1e-9);
  }
}

TEST_CASE("largest-empty-rectangle reduction round trip") {
  std::mt19937_64 rng(89);
  for (int it = 0; it < 50; ++it) {
    // Random box and interior points; add the box's top-left and bottom-right
    // corners and solve the annulus problem.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x0 = u(rng), y0 = u(rng);
    const double w = 0.5 + u(rng), h = 0.5 + u(rng);
    std::vector<Point> q;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) q.emplace_back(x0 + u(rng) * w, y0 + u(rng) * h);

    std::vector<Point> p = q;
    p.emplace_back(x0, y0 + h);  // top-left
    p.emplace_back(x0 + w, y0);  // bottom-right

    const FixedSolveResult r = min_area_rect_annulus_fixed(p, 0.0);
    CHECK(r.annulus.outer.width() == doctest::Approx(w));
    CHECK(r.annulus.outer.height() == doctest::Approx(h));

    const OrientedRect box(Orientation::problem(0.0), x0, x0 + w, y0, y0 + h);
    const MaxEmptyRect ler = largest_empty_rect(q, box, 1e-9 * std::max(w, h));
    CHECK(r.annulus.inner.area() == doctest::Approx(ler.rect.area()).epsilon(1e-12));
  }
}

TEST_CASE("empty-shape fixed solves") {
  const auto cc = corners_plus_center();
  const FixedSolveResult er = largest_empty_rect_fixed_solve(cc, 0.0);
  CHECK(er.area == doctest::Approx(0.5));
  const FixedSolveResult es = largest_empty_square_fixed_solve(cc, 0.0);
  CHECK(es.width == doctest::Approx(0.5));
  CHECK(es.area == doctest::Approx(0.25));
}

TEST_CASE("single point and collinear degeneracies") {
  const std::vector<Point> one = {{2, 3}};
  const FixedSolveResult r = min_width_square_annulus_fixed(one, 0.3);
  CHECK(r.width == doctest::Approx(0.0));
  CHECK(r.degenerate);

  const std::vector<Point> line = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  const FixedSolveResult u = uniform_rect_annulus_fixed(line, 0.0);
  CHECK(u.width == doctest::Approx(0.0));
  CHECK(u.degenerate);
  const FixedSolveResult a = min_area_rect_annulus_fixed(line, 0.0);
  CHECK(a.area == doctest::Approx(0.0));

  const FixedSolveResult s = min_width_square_annulus_fixed(line, 0.0);
  CHECK(s.width <= 1.5 + 1e-9);  // half the smallest enclosing square side
  check_containment(line, s, 0.0);
}

TEST_CASE("unsupported combinations are rejected by the dispatcher") {
  const auto cc = corners_plus_center();
  CHECK_THROWS_AS(solve_fixed(cc, 0.0, Shape::square, Objective::largest), std::invalid_argument);
  CHECK_THROWS_AS(solve_fixed(cc, 0.0, Shape::empty_rect, Objective::width), std::invalid_argument);
  CHECK_NOTHROW(solve_fixed(cc, 0.0, Shape::empty_square, Objective::largest));
}
