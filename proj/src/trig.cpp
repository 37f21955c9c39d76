#include "annulus/trig.hpp"

#include <algorithm>
#include <cmath>

namespace annulus {

namespace {

constexpr double kThetaEps = 1e-12;   // minimum piece length
constexpr double kSnapEps = 1e-13;    // root-to-endpoint snapping
constexpr double kIdenticalRel = 1e-12;

void check_frequency(int freq) {
  if (freq != 1 && freq != 2) {
    throw std::invalid_argument("sinusoid frequency must be 1 or 2");
  }
}

double amplitude_scale(const Sinusoid& f, const Sinusoid& g) {
  return std::max({f.amplitude(), g.amplitude(), std::abs(f.base()), std::abs(g.base()), 1e-300});
}

}  // namespace

Sinusoid::Sinusoid(double amplitude, double base, int frequency, double phase)
    : amp_(amplitude), base_(base), freq_(frequency), phase_(phase) {
  check_frequency(frequency);
  if (amp_ < 0.0) {
    amp_ = -amp_;
    phase_ += kPi;
  }
  phase_ = std::fmod(phase_, kTwoPi);
  if (phase_ < 0.0) phase_ += kTwoPi;
}

Sinusoid Sinusoid::from_cos_sin(double cos_coeff, double sin_coeff) {
  const double amp = std::hypot(cos_coeff, sin_coeff);
  if (amp == 0.0) return Sinusoid(0.0, 0.0, 1, 0.0);
  return Sinusoid(amp, 0.0, 1, std::atan2(cos_coeff, sin_coeff));
}

Sinusoid Sinusoid::constant(double value, int frequency) { return Sinusoid(0.0, value, frequency, 0.0); }

Sinusoid Sinusoid::scaled(double k) const { return Sinusoid(amp_ * k, base_ * k, freq_, phase_); }

std::vector<double> Sinusoid::roots(double lo, double hi) const {
  std::vector<double> out;
  if (amp_ <= 0.0) return out;  // constant: either no roots or identically zero
  const double s = -base_ / amp_;
  if (s < -1.0 || s > 1.0) return out;
  const double x0 = std::asin(s);
  // Solutions of sin(u) = s: u = x0 + 2k*pi and u = pi - x0 + 2k*pi.
  for (const double u_base : {x0, kPi - x0}) {
    const double u_lo = freq_ * lo + phase_;
    const double k_start = std::floor((u_lo - u_base) / kTwoPi) - 1.0;
    for (double k = k_start; k < k_start + 4.0; k += 1.0) {
      double t = (u_base + kTwoPi * k - phase_) / freq_;
      if (std::abs(t - lo) < kSnapEps) t = lo;
      if (std::abs(t - hi) < kSnapEps) t = hi;
      if (t >= lo && t <= hi) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < kSnapEps; }),
            out.end());
  return out;
}

std::vector<double> Sinusoid::critical_points(double lo, double hi) const {
  std::vector<double> out;
  if (amp_ <= 0.0) return out;
  // omega*theta + phi = pi/2 + k*pi
  const double u_lo = freq_ * lo + phase_;
  const double k_start = std::floor((u_lo - kHalfPi) / kPi) - 1.0;
  for (double k = k_start; k < k_start + 6.0; k += 1.0) {
    const double t = (kHalfPi + kPi * k - phase_) / freq_;
    if (t >= lo && t <= hi) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Sinusoid add(const Sinusoid& f, const Sinusoid& g) {
  if (f.frequency() != g.frequency()) {
    throw std::invalid_argument("cannot add sinusoids of different frequency");
  }
  const double sin_coeff = f.amplitude() * std::cos(f.phase()) + g.amplitude() * std::cos(g.phase());
  const double cos_coeff = f.amplitude() * std::sin(f.phase()) + g.amplitude() * std::sin(g.phase());
  const double amp = std::hypot(sin_coeff, cos_coeff);
  const double phase = amp == 0.0 ? 0.0 : std::atan2(cos_coeff, sin_coeff);
  return Sinusoid(amp, f.base() + g.base(), f.frequency(), phase);
}

Sinusoid multiply(const Sinusoid& f, const Sinusoid& g) {
  if (f.frequency() != 1 || g.frequency() != 1) {
    throw std::invalid_argument("product requires frequency-1 operands");
  }
  const double base_tol = 1e-12 * (1.0 + f.amplitude() + g.amplitude());
  if (std::abs(f.base()) > base_tol || std::abs(g.base()) > base_tol) {
    throw std::invalid_argument("product requires base-0 operands");
  }
  const double half = f.amplitude() * g.amplitude() / 2.0;
  return Sinusoid(half, half * std::cos(f.phase() - g.phase()), 2,
                  f.phase() + g.phase() - kHalfPi);
}

std::vector<double> crossings(const Sinusoid& f, const Sinusoid& g, const ThetaInterval& I) {
  if (f.frequency() != 1 || g.frequency() != 1) {
    throw std::invalid_argument("crossings requires frequency-1 operands");
  }
  const Sinusoid diff = add(f, g.negated());
  if (diff.amplitude() < kIdenticalRel * amplitude_scale(f, g)) {
    throw std::domain_error("identical curves");
  }
  std::vector<double> out;
  for (double t : diff.roots(I.lo, I.hi)) {
    if (I.contains(t)) out.push_back(t);
  }
  return out;
}

PiecewiseSinusoid PiecewiseSinusoid::single(const ThetaInterval& I, const Sinusoid& s, int src) {
  PiecewiseSinusoid f;
  f.pieces_.push_back({I.lo, I.hi, s, src});
  return f;
}

double PiecewiseSinusoid::value(double theta) const {
  if (pieces_.empty()) throw std::logic_error("empty piecewise sinusoid");
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), theta,
                             [](double t, const SinPiece& p) { return t < p.lo; });
  if (it != pieces_.begin()) --it;
  return it->fn.value(theta);
}

void PiecewiseSinusoid::append(SinPiece piece) {
  if (piece.hi <= piece.lo) return;  // skip degenerate slivers
  if (!pieces_.empty()) {
    if (std::abs(piece.lo - pieces_.back().hi) > 1e-9) {
      throw std::logic_error("non-contiguous piecewise append");
    }
    piece.lo = pieces_.back().hi;
    if (piece.hi <= piece.lo) return;
  }
  pieces_.push_back(piece);
}

PiecewiseSinusoid PiecewiseSinusoid::restricted(double lo, double hi) const {
  PiecewiseSinusoid out;
  for (const SinPiece& p : pieces_) {
    const double a = std::max(p.lo, lo);
    const double b = std::min(p.hi, hi);
    if (b - a > kThetaEps) out.pieces_.push_back({a, b, p.fn, p.src});
  }
  // Keep at least one piece for point-like restrictions.
  if (out.pieces_.empty() && !pieces_.empty()) {
    const double mid = (lo + hi) / 2.0;
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), mid,
                               [](double t, const SinPiece& p) { return t < p.lo; });
    if (it != pieces_.begin()) --it;
    out.pieces_.push_back({lo, hi, it->fn, it->src});
  }
  return out;
}

PiecewiseSinusoid PiecewiseSinusoid::scaled(double k) const {
  PiecewiseSinusoid out;
  for (const SinPiece& p : pieces_) out.pieces_.push_back({p.lo, p.hi, p.fn.scaled(k), p.src});
  return out;
}

namespace {

// Merge two piecewise functions covering the same span into their upper or
// lower envelope. Each pair of branches crosses at most once per overlap.
PiecewiseSinusoid merge_envelope(const PiecewiseSinusoid& a, const PiecewiseSinusoid& b, bool upper) {
  std::vector<SinPiece> segs;
  std::vector<double> cuts;
  for (const SinPiece& p : a.pieces()) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  for (const SinPiece& p : b.pieces()) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) < kThetaEps; }),
             cuts.end());

  auto piece_at = [](const PiecewiseSinusoid& f, double t) -> const SinPiece& {
    const auto& ps = f.pieces();
    auto it = std::upper_bound(ps.begin(), ps.end(), t,
                               [](double x, const SinPiece& p) { return x < p.lo; });
    if (it != ps.begin()) --it;
    return *it;
  };

  auto emit = [&](double lo, double hi, const SinPiece& winner) {
    if (hi - lo <= kThetaEps) {
      // Extend the previous piece over the sliver instead of dropping span.
      if (!segs.empty()) segs.back().hi = hi;
      return;
    }
    segs.push_back({lo, hi, winner.fn, winner.src});
  };

  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi - lo <= kThetaEps) continue;
    const double mid = (lo + hi) / 2.0;
    const SinPiece& pa = piece_at(a, mid);
    const SinPiece& pb = piece_at(b, mid);

    const Sinusoid diff = add(pa.fn, pb.fn.negated());
    const double scale = amplitude_scale(pa.fn, pb.fn);
    if (diff.amplitude() + std::abs(diff.base()) < kIdenticalRel * scale) {
      // Equal within tolerance: keep the earlier-indexed source.
      emit(lo, hi, (pa.src >= 0 && (pb.src < 0 || pa.src <= pb.src)) ? pa : pb);
      continue;
    }

    std::vector<double> roots = diff.roots(lo, hi);
    double prev = lo;
    for (double r : roots) {
      if (r - prev > kThetaEps && hi - r > kThetaEps) {
        const double m = (prev + r) / 2.0;
        const bool a_wins = upper ? pa.fn.value(m) >= pb.fn.value(m) : pa.fn.value(m) <= pb.fn.value(m);
        emit(prev, r, a_wins ? pa : pb);
        prev = r;
      }
    }
    const double m = (prev + hi) / 2.0;
    const bool a_wins = upper ? pa.fn.value(m) >= pb.fn.value(m) : pa.fn.value(m) <= pb.fn.value(m);
    emit(prev, hi, a_wins ? pa : pb);
  }
  PiecewiseSinusoid out;
  for (const SinPiece& s : segs) out.append(s);
  return out;
}

PiecewiseSinusoid envelope_recursive(std::span<const PiecewiseSinusoid> fs, bool upper) {
  if (fs.size() == 1) return fs[0];
  const size_t mid = fs.size() / 2;
  const PiecewiseSinusoid left = envelope_recursive(fs.subspan(0, mid), upper);
  const PiecewiseSinusoid right = envelope_recursive(fs.subspan(mid), upper);
  return merge_envelope(left, right, upper);
}

PiecewiseSinusoid envelope_impl(std::span<const PiecewiseSinusoid> fs, const ThetaInterval& I, bool upper) {
  if (fs.empty()) throw std::invalid_argument("envelope of an empty sequence");
  std::vector<PiecewiseSinusoid> clipped;
  clipped.reserve(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    PiecewiseSinusoid r = fs[i].restricted(I.lo, I.hi);
    if (r.empty()) throw std::invalid_argument("envelope input does not cover the interval");
    // Tag untagged pieces with the input index for deterministic tie handling.
    PiecewiseSinusoid tagged;
    for (const SinPiece& p : r.pieces()) {
      tagged.append({p.lo, p.hi, p.fn, p.src >= 0 ? p.src : static_cast<int>(i)});
    }
    clipped.push_back(std::move(tagged));
  }
  return envelope_recursive(clipped, upper);
}

}  // namespace

PiecewiseSinusoid envelope_of(std::span<const Sinusoid> fs, const ThetaInterval& I, bool upper) {
  std::vector<PiecewiseSinusoid> ps;
  ps.reserve(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    ps.push_back(PiecewiseSinusoid::single(I, fs[i], static_cast<int>(i)));
  }
  return envelope_impl(ps, I, upper);
}

PiecewiseSinusoid upper_envelope(std::span<const PiecewiseSinusoid> fs, const ThetaInterval& I) {
  return envelope_impl(fs, I, true);
}

PiecewiseSinusoid lower_envelope(std::span<const PiecewiseSinusoid> fs, const ThetaInterval& I) {
  return envelope_impl(fs, I, false);
}

Extremum extremize(const PiecewiseSinusoid& f, const ThetaInterval& I, bool minimize) {
  if (f.empty()) throw std::invalid_argument("extremize of an empty function");
  Extremum best;
  bool have = false;
  // Each piece is scanned over its closure with its own branch, so one-sided
  // values at breakpoints are not lost.
  auto consider = [&](const Sinusoid& fn, double t) {
    const double v = fn.value(t);
    const bool better = minimize ? v < best.value : v > best.value;
    if (!have || better) {
      best.theta = t;
      best.value = v;
      have = true;
    }
  };
  for (const SinPiece& p : f.pieces()) {
    const double lo = std::max(p.lo, I.lo);
    const double hi = std::min(p.hi, I.hi);
    if (hi < lo) continue;
    consider(p.fn, lo);
    for (double t : p.fn.critical_points(lo, hi)) consider(p.fn, t);
    consider(p.fn, hi);
  }
  if (!have) throw std::invalid_argument("extremize interval does not meet the domain");
  best.at_boundary = (best.theta == I.lo && I.lo_open) || (best.theta == I.hi && I.hi_open);
  return best;
}

std::vector<OptRange> extremize_all(const PiecewiseSinusoid& f, const ThetaInterval& I, bool minimize,
                                    double tie_tol, double plateau_amp_tol) {
  const Extremum best = extremize(f, I, minimize);
  std::vector<OptRange> hits;
  auto near_best = [&](double v) {
    return minimize ? v <= best.value + tie_tol : v >= best.value - tie_tol;
  };
  for (const SinPiece& p : f.pieces()) {
    const double lo = std::max(p.lo, I.lo);
    const double hi = std::min(p.hi, I.hi);
    if (hi < lo) continue;
    if (p.fn.amplitude() <= plateau_amp_tol) {
      if (near_best(p.fn.base())) hits.push_back({lo, hi, p.fn.base()});
      continue;
    }
    std::vector<double> cands = {lo, hi};
    for (double t : p.fn.critical_points(lo, hi)) cands.push_back(t);
    for (double t : cands) {
      const double v = p.fn.value(t);
      if (near_best(v)) hits.push_back({t, t, v});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const OptRange& a, const OptRange& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  // Coalesce touching ranges.
  std::vector<OptRange> merged;
  for (const OptRange& h : hits) {
    if (!merged.empty() && h.lo <= merged.back().hi + 1e-12) {
      merged.back().hi = std::max(merged.back().hi, h.hi);
      if (minimize ? h.value < merged.back().value : h.value > merged.back().value) {
        merged.back().value = h.value;
      }
    } else {
      merged.push_back(h);
    }
  }
  return merged;
}

}  // namespace annulus
