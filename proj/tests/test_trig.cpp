#include <doctest.h>

#include <cmath>
#include <random>

#include "annulus/trig.hpp"

using namespace annulus;

namespace {

Sinusoid rand_sin(std::mt19937_64& rng, double amp_max = 5.0) {
  std::uniform_real_distribution<double> ua(0.1, amp_max);
  std::uniform_real_distribution<double> up(0.0, kTwoPi);
  return Sinusoid(ua(rng), 0.0, 1, up(rng));
}

}  // namespace

TEST_CASE("add: antiphase cancellation, identity, closed form") {
  const Sinusoid f(1, 0, 1, 0);
  const Sinusoid g(1, 0, 1, kPi);
  const Sinusoid zero = add(f, g);
  CHECK(zero.amplitude() == doctest::Approx(0.0).epsilon(1e-15));

  const Sinusoid id = add(f, Sinusoid(0, 0, 1, 0));
  CHECK(id.value(0.3) == doctest::Approx(f.value(0.3)));

  // sin(t) + sin(t + pi/2) = sqrt(2) sin(t + pi/4), checked on a dense grid
  const Sinusoid s = add(f, Sinusoid(1, 0, 1, kHalfPi));
  CHECK(s.amplitude() == doctest::Approx(std::sqrt(2.0)));
  for (int i = 0; i < 10000; ++i) {
    const double t = kPi * i / 10000.0;
    CHECK(s.value(t) ==
          doctest::Approx(std::sin(t) + std::sin(t + kHalfPi)).epsilon(1e-12).scale(1.0));
  }
  CHECK_THROWS_AS(add(f, Sinusoid(1, 0, 2, 0)), std::invalid_argument);
}

TEST_CASE("multiply: squared sine and random closed-form grid oracle") {
  const Sinusoid f(1, 0, 1, 0);
  const Sinusoid sq = multiply(f, f);
  CHECK(sq.frequency() == 2);
  CHECK(sq.value(kPi / 4) == doctest::Approx(0.5));

  const Sinusoid fg = multiply(f, Sinusoid(1, 0, 1, kHalfPi));
  CHECK(fg.value(kPi / 4) == doctest::Approx(0.5));

  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    const Sinusoid a = rand_sin(rng);
    const Sinusoid b = rand_sin(rng);
    const Sinusoid p = multiply(a, b);
    double max_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double t = kPi * i / 10000.0;
      max_err = std::max(max_err, std::abs(p.value(t) - a.value(t) * b.value(t)));
    }
    CHECK(max_err <= 1e-12 * a.amplitude() * b.amplitude() + 1e-15);
  }
  CHECK_THROWS_AS(multiply(Sinusoid(1, 1, 1, 0), f), std::invalid_argument);
  CHECK_THROWS_AS(multiply(Sinusoid(1, 0, 2, 0), Sinusoid(1, 0, 2, 0)), std::invalid_argument);
}

TEST_CASE("crossings: sin vs cos, proportional curves, bisection oracle") {
  const Sinusoid f(1, 0, 1, 0);
  const Sinusoid g(1, 0, 1, kHalfPi);
  const auto roots = crossings(f, g, ThetaInterval::half_open(0, kHalfPi));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(kPi / 4));

  // Proportional curves meet only at theta = 0, excluded by the open interval.
  const auto none = crossings(f, Sinusoid(2, 0, 1, 0), ThetaInterval::open(0, kHalfPi));
  CHECK(none.empty());

  CHECK_THROWS_AS(crossings(f, Sinusoid(1, 0, 1, 0), ThetaInterval::half_open(0, kPi)),
                  std::domain_error);

  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    const Sinusoid a = rand_sin(rng);
    const Sinusoid b = rand_sin(rng);
    const ThetaInterval I = ThetaInterval::closed(0.0, kPi - 1e-9);
    std::vector<double> roots2;
    try {
      roots2 = crossings(a, b, I);
    } catch (const std::domain_error&) {
      continue;
    }
    // Bisection on the difference over 1e5 steps finds the same root.
    auto diff = [&](double t) { return a.value(t) - b.value(t); };
    std::vector<double> found;
    double prev_t = I.lo, prev_v = diff(I.lo);
    for (int i = 1; i <= 100000; ++i) {
      const double t = I.lo + (I.hi - I.lo) * i / 100000.0;
      const double v = diff(t);
      if (prev_v == 0.0 || (prev_v < 0) != (v < 0)) {
        double lo = prev_t, hi = t;
        for (int b2 = 0; b2 < 80; ++b2) {
          const double mid = (lo + hi) / 2;
          if ((diff(lo) < 0) != (diff(mid) < 0)) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        found.push_back((lo + hi) / 2);
      }
      prev_t = t;
      prev_v = v;
    }
    REQUIRE(roots2.size() == found.size());
    for (size_t i = 0; i < found.size(); ++i) {
      CHECK(std::abs(roots2[i] - found[i]) <= 1e-10);
    }
  }
}

TEST_CASE("envelope: single crossing, singleton, random grid oracle") {
  const ThetaInterval I = ThetaInterval::half_open(0, kHalfPi);
  const Sinusoid s(1, 0, 1, 0);
  const Sinusoid c(1, 0, 1, kHalfPi);
  const Sinusoid fs[2] = {s, c};
  const PiecewiseSinusoid env = envelope_of(fs, I, true);
  REQUIRE(env.pieces().size() == 2);
  CHECK(env.pieces()[0].src == 1);  // cos branch first
  CHECK(env.pieces()[1].src == 0);
  CHECK(env.pieces()[0].hi == doctest::Approx(kPi / 4));

  const PiecewiseSinusoid single = PiecewiseSinusoid::single(I, s);
  const PiecewiseSinusoid one[] = {single};
  CHECK(upper_envelope(one, I).pieces().size() == 1);

  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    std::vector<Sinusoid> fs2;
    for (int k = 0; k < 20; ++k) fs2.push_back(rand_sin(rng));
    const PiecewiseSinusoid e = envelope_of(fs2, I, true);
    for (int i = 0; i <= 10000; ++i) {
      const double t = I.lo + (I.hi - I.lo) * i / 10001.0;
      double mx = -1e300;
      for (const Sinusoid& f : fs2) mx = std::max(mx, f.value(t));
      CHECK(std::abs(e.value(t) - mx) <= 1e-10 * 5.0);
    }
  }
  CHECK_THROWS_AS(upper_envelope(std::span<const PiecewiseSinusoid>{}, I), std::invalid_argument);
}

TEST_CASE("extremize: monotone piece, boundary flag, grid oracle") {
  const ThetaInterval I = ThetaInterval::half_open(0, kHalfPi);
  const PiecewiseSinusoid s = PiecewiseSinusoid::single(I, Sinusoid(1, 0, 1, 0));
  const Extremum mn = extremize(s, I, true);
  CHECK(mn.theta == doctest::Approx(0.0));
  CHECK(mn.value == doctest::Approx(0.0));
  CHECK_FALSE(mn.at_boundary);

  // sin^2(theta) = (sin(2 theta - pi/2) + 1) / 2 increases on [0, pi/2)
  const PiecewiseSinusoid sq =
      PiecewiseSinusoid::single(I, Sinusoid(0.5, 0.5, 2, -kHalfPi));
  const Extremum mx = extremize(sq, I, false);
  CHECK(mx.theta == doctest::Approx(kHalfPi));
  CHECK(mx.value == doctest::Approx(1.0));
  CHECK(mx.at_boundary);

  std::mt19937_64 rng(23);
  for (int it = 0; it < 50; ++it) {
    // Random frequency-2 piecewise built from products.
    std::uniform_real_distribution<double> cut(0.2, 1.2);
    const double c0 = cut(rng);
    PiecewiseSinusoid f;
    const Sinusoid a = multiply(rand_sin(rng), rand_sin(rng));
    const Sinusoid b = multiply(rand_sin(rng), rand_sin(rng));
    f.append({0.0, c0, a, -1});
    f.append({c0, kHalfPi, b, -1});
    const Extremum got = extremize(f, I, true);
    double best = 1e300;
    const int steps = 100000;
    for (int i = 0; i <= steps; ++i) {
      const double t = kHalfPi * i / steps;
      best = std::min(best, t < c0 ? a.value(t) : b.value(t));
    }
    // The grid may straddle a V-shaped minimum; allow a slope * step margin.
    const double slope = 2.0 * (a.amplitude() + b.amplitude());
    CHECK(got.value <= best + 1e-12);
    CHECK(got.value >= best - slope * (kHalfPi / steps) - 1e-12);
  }
}

TEST_CASE("extremize is stable under refinement") {
  const ThetaInterval I = ThetaInterval::half_open(0, kHalfPi);
  const Sinusoid f = multiply(Sinusoid(2, 0, 1, 0.3), Sinusoid(1.5, 0, 1, 4.0));
  PiecewiseSinusoid whole = PiecewiseSinusoid::single(I, f);
  PiecewiseSinusoid split;
  split.append({0.0, 0.61, f, -1});
  split.append({0.61, kHalfPi, f, -1});
  const Extremum a = extremize(whole, I, true);
  const Extremum b = extremize(split, I, true);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  CHECK(a.theta == doctest::Approx(b.theta).epsilon(1e-9));
}

TEST_CASE("extremize_all reports plateaus") {
  const ThetaInterval I = ThetaInterval::half_open(0, kHalfPi);
  PiecewiseSinusoid f;
  f.append({0.0, 0.5, Sinusoid::constant(1.0), -1});
  f.append({0.5, kHalfPi, Sinusoid(1, 1, 1, -0.5), -1});  // rises from 1
  const auto hits = extremize_all(f, I, true, 1e-12, 1e-12);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].lo == doctest::Approx(0.0));
  CHECK(hits[0].hi == doctest::Approx(0.5));
  CHECK(hits[0].value == doctest::Approx(1.0));
}
