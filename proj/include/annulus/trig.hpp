#pragma once

#include <span>
#include <vector>

#include "annulus/geom.hpp"

namespace annulus {

/// Closed, half-open, or open interval of orientations.
struct ThetaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = true;  // default is the half-open [lo, hi)

  static ThetaInterval half_open(double lo, double hi) { return {lo, hi, false, true}; }
  static ThetaInterval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static ThetaInterval open(double lo, double hi) { return {lo, hi, true, true}; }

  double length() const { return hi - lo; }
  bool contains(double t) const {
    if (lo_open ? t <= lo : t < lo) return false;
    if (hi_open ? t >= hi : t > hi) return false;
    return true;
  }
};

/// a * sin(omega * theta + phi) + b with omega in {1, 2}.
/// Canonical form: a >= 0 and phi in [0, 2pi); a negative amplitude is absorbed
/// into a phase shift of pi.
class Sinusoid {
 public:
  Sinusoid() = default;
  Sinusoid(double amplitude, double base, int frequency, double phase);

  /// c * cos(theta) + s * sin(theta) as a frequency-1, base-0 sinusoid.
  static Sinusoid from_cos_sin(double cos_coeff, double sin_coeff);
  static Sinusoid constant(double value, int frequency = 1);

  double amplitude() const { return amp_; }
  double base() const { return base_; }
  int frequency() const { return freq_; }
  double phase() const { return phase_; }

  double value(double theta) const { return amp_ * std::sin(freq_ * theta + phase_) + base_; }
  Sinusoid scaled(double k) const;
  Sinusoid negated() const { return scaled(-1.0); }
  Sinusoid plus_constant(double c) const { return Sinusoid(amp_, base_ + c, freq_, phase_); }

  /// Solutions of value(theta) = 0 in [lo, hi], sorted. Roots within 1e-13 of
  /// an endpoint snap onto it. An everywhere-zero function reports no roots.
  std::vector<double> roots(double lo, double hi) const;

  /// Interior critical orientations (omega*theta + phi = pi/2 mod pi) in [lo, hi].
  std::vector<double> critical_points(double lo, double hi) const;

 private:
  double amp_ = 0.0;
  double base_ = 0.0;
  int freq_ = 1;
  double phase_ = 0.0;
};

/// Pointwise sum. Both operands must share a frequency.
Sinusoid add(const Sinusoid& f, const Sinusoid& g);

/// Product of two frequency-1, base-0 sinusoids:
/// (a1 a2 / 2) * (sin(2 theta + phi1 + phi2 - pi/2) + cos(phi1 - phi2)).
Sinusoid multiply(const Sinusoid& f, const Sinusoid& g);

/// All roots of f - g in I for frequency-1 base-0 operands (at most one).
/// Throws if the curves are identical within 1e-12 of the amplitude scale.
std::vector<double> crossings(const Sinusoid& f, const Sinusoid& g, const ThetaInterval& I);

struct SinPiece {
  double lo = 0.0;
  double hi = 0.0;
  Sinusoid fn;
  int src = -1;  // index of the originating input in an envelope, -1 otherwise
};

/// Contiguous, non-overlapping sinusoid pieces covering [domain_lo, domain_hi].
class PiecewiseSinusoid {
 public:
  PiecewiseSinusoid() = default;

  static PiecewiseSinusoid single(const ThetaInterval& I, const Sinusoid& s, int src = -1);

  const std::vector<SinPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double domain_lo() const { return pieces_.front().lo; }
  double domain_hi() const { return pieces_.back().hi; }

  /// Evaluation clamps theta into the domain; a breakpoint evaluates the piece
  /// to its right (closure at the far end uses the last piece).
  double value(double theta) const;

  /// Appends a piece; it must continue the current domain.
  void append(SinPiece piece);

  PiecewiseSinusoid restricted(double lo, double hi) const;
  PiecewiseSinusoid scaled(double k) const;

  /// Number of interior breakpoints.
  int breakpoint_count() const { return pieces_.empty() ? 0 : static_cast<int>(pieces_.size()) - 1; }

 private:
  std::vector<SinPiece> pieces_;
};

/// Envelope of plain sinusoids over I (all frequency-1 base-0).
PiecewiseSinusoid envelope_of(std::span<const Sinusoid> fs, const ThetaInterval& I, bool upper);

/// Upper/lower envelope of piecewise inputs over I via divide-and-conquer
/// pairwise merges. Near-identical branches keep the earlier-indexed input.
PiecewiseSinusoid upper_envelope(std::span<const PiecewiseSinusoid> fs, const ThetaInterval& I);
PiecewiseSinusoid lower_envelope(std::span<const PiecewiseSinusoid> fs, const ThetaInterval& I);

struct Extremum {
  double theta = 0.0;
  double value = 0.0;
  bool at_boundary = false;  // attained at an open endpoint of the query interval
};

/// Global extremum of f over the closure of I. Candidates are piece endpoints
/// and interior critical points; ties resolve toward smaller theta.
Extremum extremize(const PiecewiseSinusoid& f, const ThetaInterval& I, bool minimize);

/// A connected set of optimal orientations; lo == hi for an isolated optimum.
struct OptRange {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
};

/// Every global-optimum location of f over I within tie_tol of the best value.
/// Pieces whose amplitude is below plateau_amp_tol contribute whole intervals.
std::vector<OptRange> extremize_all(const PiecewiseSinusoid& f, const ThetaInterval& I, bool minimize,
                                    double tie_tol, double plateau_amp_tol);

}  // namespace annulus
