#include "annulus/rotating_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

namespace annulus {

namespace {

constexpr double kCutEps = 1e-12;

Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

struct KeyHash {
  size_t operator()(const SupportKey& k) const {
    size_t h = 1469598103934665603ull;
    for (int v : {k.top, k.bottom, k.left, k.right}) {
      h ^= static_cast<size_t>(v + 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct SweepContext {
  std::vector<Point> pts;
  Tolerances tol;
  std::vector<PrimaryInterval> prims;
  std::vector<ElementaryInterval> elems;
  std::vector<MERClass> classes;
  long long pairs_T = 0;
};

std::vector<ElementaryInterval> build_elems(std::span<const Point> pts,
                                            const std::vector<PrimaryInterval>& prims) {
  std::vector<double> cuts = {0.0, kHalfPi};
  for (const PrimaryInterval& pi : prims) {
    cuts.push_back(pi.lo);
    cuts.push_back(pi.hi);
  }
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

  std::vector<ElementaryInterval> out;
  size_t pi = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = (cuts[i] + cuts[i + 1]) / 2.0;
    while (pi + 1 < prims.size() && prims[pi].hi <= mid) ++pi;
    out.push_back({cuts[i], cuts[i + 1], static_cast<int>(pi)});
  }
  return out;
}

SweepContext build_context(std::span<const Point> pts) {
  SweepContext ctx;
  ctx.pts.assign(pts.begin(), pts.end());
  ctx.tol = Tolerances::for_points(pts);
  ctx.prims = primary_intervals(pts);
  ctx.elems = build_elems(pts, ctx.prims);

  std::unordered_map<SupportKey, int, KeyHash> open;
  for (size_t i = 0; i < ctx.elems.size(); ++i) {
    const ElementaryInterval& iv = ctx.elems[i];
    const double theta = (iv.lo + iv.hi) / 2.0;
    std::vector<Point> fpts;
    fpts.reserve(pts.size());
    for (const Point& p : ctx.pts) fpts.push_back(to_frame(p, theta));
    const OrientedRect box = enclosing_rect(ctx.pts, theta);
    const std::vector<MaxEmptyRect> mers = enumerate_mers(fpts, box, ctx.tol.eps_geo);
    ctx.pairs_T += static_cast<long long>(mers.size());

    std::unordered_map<SupportKey, int, KeyHash> next_open;
    for (const MaxEmptyRect& m : mers) {
      const SupportKey key{m.top, m.bottom, m.left, m.right};
      auto it = open.find(key);
      if (it != open.end()) {
        MERClass& cls = ctx.classes[it->second];
        cls.last_interval = static_cast<int>(i);
        cls.hi = iv.hi;
        next_open.emplace(key, it->second);
      } else {
        ctx.classes.push_back({key, iv.lo, iv.hi, static_cast<int>(i), static_cast<int>(i)});
        next_open.emplace(key, static_cast<int>(ctx.classes.size()) - 1);
      }
    }
    open = std::move(next_open);
  }
  return ctx;
}

struct Piece {
  int class_idx;
  int interval_idx;
};

std::vector<Piece> piece_list(const SweepContext& ctx) {
  std::vector<Piece> out;
  out.reserve(static_cast<size_t>(ctx.pairs_T));
  for (size_t c = 0; c < ctx.classes.size(); ++c) {
    for (int i = ctx.classes[c].first_interval; i <= ctx.classes[c].last_interval; ++i) {
      out.push_back({static_cast<int>(c), i});
    }
  }
  return out;
}

struct ResolvedPiece {
  double lo, hi;
  const PrimaryInterval* prim;
  int rt, rb, rl, rr;  // class supports with box markers resolved to extremes
  Sinusoid height_r, width_r, height_e, width_e;
};

ResolvedPiece resolve_piece(const SweepContext& ctx, const Piece& pc) {
  const MERClass& cls = ctx.classes[pc.class_idx];
  const ElementaryInterval& iv = ctx.elems[pc.interval_idx];
  const PrimaryInterval& prim = ctx.prims[iv.primary_index];
  ResolvedPiece r;
  r.lo = iv.lo;
  r.hi = iv.hi;
  r.prim = &prim;
  r.rt = cls.key.top >= 0 ? cls.key.top : prim.tuple.top;
  r.rb = cls.key.bottom >= 0 ? cls.key.bottom : prim.tuple.bottom;
  r.rl = cls.key.left >= 0 ? cls.key.left : prim.tuple.left;
  r.rr = cls.key.right >= 0 ? cls.key.right : prim.tuple.right;
  const auto& P = ctx.pts;
  r.height_r = frame_dy_sinusoid(P[prim.tuple.top], P[prim.tuple.bottom]);
  r.width_r = frame_dx_sinusoid(P[prim.tuple.right], P[prim.tuple.left]);
  r.height_e = frame_dy_sinusoid(P[r.rt], P[r.rb]);
  r.width_e = frame_dx_sinusoid(P[r.rr], P[r.rl]);
  return r;
}

Sinusoid d_sinusoid(const SweepContext& ctx, const PrimaryInterval& prim) {
  const auto& P = ctx.pts;
  return prim.d_branch == DBranch::height
             ? frame_dy_sinusoid(P[prim.tuple.top], P[prim.tuple.bottom])
             : frame_dx_sinusoid(P[prim.tuple.right], P[prim.tuple.left]);
}

// Candidate under an exact total order, so parallel reduction is
// order-independent and identical to the sequential sweep.
struct Candidate {
  double value = 0.0;
  double theta = 0.0;
  int class_idx = -1;
  int interval_idx = -1;
  bool valid = false;
};

bool improves(const Candidate& a, const Candidate& b, bool minimize) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  if (a.value != b.value) return minimize ? a.value < b.value : a.value > b.value;
  if (a.theta != b.theta) return a.theta < b.theta;
  if (a.class_idx != b.class_idx) return a.class_idx < b.class_idx;
  return a.interval_idx < b.interval_idx;
}

template <typename PerPiece>
Candidate reduce_pieces(const std::vector<Piece>& pieces, int threads, bool minimize,
                        PerPiece&& per_piece) {
  const size_t n = pieces.size();
  if (threads <= 1 || n < 64) {
    Candidate best;
    for (size_t i = 0; i < n; ++i) {
      const Candidate c = per_piece(pieces[i]);
      if (improves(c, best, minimize)) best = c;
    }
    return best;
  }
  const int t = std::min<int>(threads, static_cast<int>((n + 63) / 64));
  std::vector<Candidate> partial(t);
  std::vector<std::thread> workers;
  workers.reserve(t);
  for (int w = 0; w < t; ++w) {
    workers.emplace_back([&, w]() {
      const size_t begin = n * w / t;
      const size_t end = n * (w + 1) / t;
      Candidate best;
      for (size_t i = begin; i < end; ++i) {
        const Candidate c = per_piece(pieces[i]);
        if (improves(c, best, minimize)) best = c;
      }
      partial[w] = best;
    });
  }
  for (auto& th : workers) th.join();
  Candidate best;
  for (const Candidate& c : partial) {
    if (improves(c, best, minimize)) best = c;
  }
  return best;
}

// Width of the (R_theta, E_theta) annulus as a piecewise sinusoid on a piece:
// upper envelope of the four side-width gaps.
PiecewiseSinusoid annulus_width_fn(const SweepContext& ctx, const ResolvedPiece& rp, double lo,
                                   double hi) {
  const auto& P = ctx.pts;
  const ExtremeTuple& q = rp.prim->tuple;
  const Sinusoid gaps[4] = {
      frame_dy_sinusoid(P[q.top], P[rp.rt]),      // top width
      frame_dy_sinusoid(P[rp.rb], P[q.bottom]),   // bottom width
      frame_dx_sinusoid(P[rp.rl], P[q.left]),     // left width
      frame_dx_sinusoid(P[q.right], P[rp.rr]),    // right width
  };
  return envelope_of(gaps, ThetaInterval::closed(lo, hi), true);
}

SweepReport make_report(const SweepContext& ctx, double theta_star, FixedSolveResult witness) {
  SweepReport rep;
  rep.theta_star = Orientation::problem(theta_star).radians();
  rep.width = witness.width;
  rep.area = witness.area;
  rep.witness = std::move(witness);
  rep.diag.primary_intervals = static_cast<int>(ctx.prims.size());
  rep.diag.elementary_intervals = static_cast<int>(ctx.elems.size());
  rep.diag.mer_classes = static_cast<int>(ctx.classes.size());
  rep.diag.pairs_T = ctx.pairs_T;
  rep.diag.r_at_star = rep.witness.mer_count;
  rep.diag.degenerate = rep.witness.degenerate;
  return rep;
}

void require_solvable(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("solver requires at least one point");
}

// Trivial sweep for a single (possibly repeated) point.
SweepReport trivial_report(std::span<const Point> pts, Shape shape, Objective objective) {
  SweepReport rep;
  rep.witness = solve_fixed(pts, 0.0, shape, objective);
  rep.width = rep.witness.width;
  rep.area = rep.witness.area;
  rep.diag.degenerate = true;
  if (shape == Shape::empty_square || shape == Shape::empty_rect) rep.side = rep.witness.width;
  return rep;
}

// ---------------------------------------------------------------------------
// delta_E: side of the largest square centered on the center segment C_theta
// whose R_theta-portion lies in the class rectangle. The square itself may
// overhang R_theta through a box-supported side of E, where only the wall
// extreme can block it.
// ---------------------------------------------------------------------------

PiecewiseSinusoid compute_delta_impl(const std::vector<Point>& P, const PrimaryInterval& prim,
                                     const SupportKey& key, double lo, double hi) {
  const bool hbranch = prim.d_branch == DBranch::height;
  const ExtremeTuple& q = prim.tuple;

  // Work along the center segment: on the height branch C_theta is
  // theta-aligned, so "along" is frame x and "across" frame y; the width
  // branch transposes the roles.
  const Point m = hbranch ? midpoint(P[q.top], P[q.bottom]) : midpoint(P[q.left], P[q.right]);
  const Point m2 = hbranch ? midpoint(P[q.left], P[q.right]) : midpoint(P[q.top], P[q.bottom]);
  auto along = [&](Point a, Point b) {
    return hbranch ? frame_dx_sinusoid(a, b) : frame_dy_sinusoid(a, b);
  };
  auto across = [&](Point a, Point b) {
    return hbranch ? frame_dy_sinusoid(a, b) : frame_dx_sinusoid(a, b);
  };

  // Sides of E transverse to the segment: their clearances from the segment
  // line bound the square's half-side outright (no overhang is possible
  // across the segment).
  const int s_hi_idx = hbranch ? (key.top >= 0 ? key.top : q.top)
                               : (key.right >= 0 ? key.right : q.right);
  const int s_lo_idx = hbranch ? (key.bottom >= 0 ? key.bottom : q.bottom)
                               : (key.left >= 0 ? key.left : q.left);
  const Sinusoid clear_hi = across(P[s_hi_idx], m);
  const Sinusoid clear_lo = across(m, P[s_lo_idx]);

  // Sides of E parallel to the segment keep their support kind: a point
  // support constrains the square directly, a box support lets it overhang
  // past the wall, blocked only by the wall extreme.
  const int along_lo_key = hbranch ? key.left : key.bottom;
  const int along_hi_key = hbranch ? key.right : key.top;
  const Point wall_lo = hbranch ? P[q.left] : P[q.bottom];
  const Point wall_hi = hbranch ? P[q.right] : P[q.top];
  const bool lo_is_point = along_lo_key >= 0;
  const bool hi_is_point = along_hi_key >= 0;
  const Sinusoid a_lo = lo_is_point ? along(P[along_lo_key], m) : along(wall_lo, m);
  const Sinusoid a_hi = hi_is_point ? along(P[along_hi_key], m) : along(wall_hi, m);
  const Sinusoid k_lo_raw = across(wall_lo, m);  // wall-extreme clearance, sign varies
  const Sinusoid k_hi_raw = across(wall_hi, m);

  const Sinusoid height_r = frame_dy_sinusoid(P[q.top], P[q.bottom]);
  const Sinusoid width_r = frame_dx_sinusoid(P[q.right], P[q.left]);
  const Sinusoid c_len = hbranch ? add(height_r, width_r.negated()) : add(width_r, height_r.negated());
  const Sinusoid seg_lo = add(along(m2, m), c_len.scaled(-0.5));
  const Sinusoid seg_hi = add(along(m2, m), c_len.scaled(0.5));

  // Candidate centers: the clamped peaks of the along-profile plus the two
  // segment endpoints. Between the cuts below, every candidate and every
  // constraint term is a single sinusoid.
  std::vector<Sinusoid> cands = {seg_lo, seg_hi};
  auto mid2 = [](const Sinusoid& x, const Sinusoid& y) { return add(x, y).scaled(0.5); };
  std::vector<double> cuts = {lo, hi};
  auto add_roots = [&](const Sinusoid& s) {
    for (double r : s.roots(lo, hi)) {
      if (r > lo + kCutEps && r < hi - kCutEps) cuts.push_back(r);
    }
  };
  if (!lo_is_point) add_roots(k_lo_raw);
  if (!hi_is_point) add_roots(k_hi_raw);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < kCutEps; }),
             cuts.end());

  PiecewiseSinusoid out;
  for (size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
    const double a = cuts[ci];
    const double b = cuts[ci + 1];
    const ThetaInterval sub = ThetaInterval::closed(a, b);
    const double tm = (a + b) / 2.0;

    const Sinusoid k_lo = k_lo_raw.value(tm) >= 0.0 ? k_lo_raw : k_lo_raw.negated();
    const Sinusoid k_hi = k_hi_raw.value(tm) >= 0.0 ? k_hi_raw : k_hi_raw.negated();

    cands.resize(2);  // keep seg_lo, seg_hi
    if (lo_is_point && hi_is_point) {
      cands.push_back(mid2(a_lo, a_hi));
    } else if (lo_is_point) {
      cands.push_back(mid2(a_lo, a_hi));
      cands.push_back(add(a_lo, k_hi));
    } else if (hi_is_point) {
      cands.push_back(mid2(a_lo, a_hi));
      cands.push_back(add(a_hi, k_lo.negated()));
    } else {
      cands.push_back(mid2(a_lo, a_hi));
      cands.push_back(add(a_lo, k_hi));
      cands.push_back(add(a_hi, k_lo.negated()));
      cands.push_back(add(a_lo, k_lo));
      cands.push_back(add(a_hi, k_hi.negated()));
    }

    std::vector<PiecewiseSinusoid> profiles;
    profiles.reserve(cands.size() + 1);
    profiles.push_back(PiecewiseSinusoid::single(sub, Sinusoid::constant(0.0)));
    for (const Sinusoid& u : cands) {
      // Clamp the candidate onto the segment.
      const Sinusoid pair_hi[2] = {u, seg_hi};
      PiecewiseSinusoid u_cl = envelope_of(pair_hi, sub, false);
      {
        const PiecewiseSinusoid lo_pw = PiecewiseSinusoid::single(sub, seg_lo);
        const PiecewiseSinusoid both[2] = {u_cl, lo_pw};
        u_cl = upper_envelope(both, sub);
      }
      // Half-side profile at the clamped center: min over the across
      // clearances and the two along constraints.
      PiecewiseSinusoid profile;
      for (const SinPiece& p : u_cl.pieces()) {
        const ThetaInterval ps = ThetaInterval::closed(p.lo, p.hi);
        std::vector<PiecewiseSinusoid> terms;
        terms.push_back(PiecewiseSinusoid::single(ps, clear_hi));
        terms.push_back(PiecewiseSinusoid::single(ps, clear_lo));
        const Sinusoid rise = add(p.fn, a_lo.negated());
        if (lo_is_point) {
          terms.push_back(PiecewiseSinusoid::single(ps, rise));
        } else {
          const Sinusoid wall_term[2] = {rise, k_lo};
          terms.push_back(envelope_of(wall_term, ps, true));
        }
        const Sinusoid fall = add(a_hi, p.fn.negated());
        if (hi_is_point) {
          terms.push_back(PiecewiseSinusoid::single(ps, fall));
        } else {
          const Sinusoid wall_term[2] = {fall, k_hi};
          terms.push_back(envelope_of(wall_term, ps, true));
        }
        const PiecewiseSinusoid env = lower_envelope(terms, ps);
        for (const SinPiece& rp : env.pieces()) profile.append(rp);
      }
      profiles.push_back(std::move(profile));
    }
    const PiecewiseSinusoid best = upper_envelope(profiles, sub);
    const PiecewiseSinusoid side_len = best.scaled(2.0);  // half-side -> side
    for (const SinPiece& p : side_len.pieces()) out.append(p);
  }
  return out;
}

}  // namespace

std::vector<ElementaryInterval> elementary_intervals(std::span<const Point> pts) {
  require_solvable(pts);
  if (pts.size() < 2) return {{0.0, kHalfPi, 0}};
  return build_elems(pts, primary_intervals(pts));
}

std::vector<MERClass> mer_classes(std::span<const Point> pts) {
  require_solvable(pts);
  if (pts.size() < 2) {
    return {{SupportKey{}, 0.0, kHalfPi, 0, 0}};
  }
  return build_context(pts).classes;
}

PiecewiseSinusoid compute_delta(std::span<const Point> pts, const PrimaryInterval& prim,
                                const SupportKey& key, double lo, double hi) {
  if (lo < prim.lo - kCutEps || hi > prim.hi + kCutEps) {
    throw std::invalid_argument("delta piece must lie inside one refined primary interval");
  }
  std::vector<Point> P(pts.begin(), pts.end());
  return compute_delta_impl(P, prim, key, lo, hi);
}

// ---------------------------------------------------------------------------
// Rectangular annuli over all orientations
// ---------------------------------------------------------------------------

SweepReport min_area_rect_annulus_any(std::span<const Point> pts, int threads) {
  require_solvable(pts);
  if (pts.size() < 2) return trivial_report(pts, Shape::rect, Objective::area);
  const SweepContext ctx = build_context(pts);
  const std::vector<Piece> pieces = piece_list(ctx);

  const Candidate best = reduce_pieces(pieces, threads, true, [&](const Piece& pc) {
    const ResolvedPiece rp = resolve_piece(ctx, pc);
    const Sinusoid area_fn =
        add(multiply(rp.height_r, rp.width_r), multiply(rp.height_e, rp.width_e).negated());
    const ThetaInterval sub = ThetaInterval::closed(rp.lo, rp.hi);
    const Extremum ex = extremize(PiecewiseSinusoid::single(sub, area_fn), sub, true);
    return Candidate{ex.value, ex.theta, pc.class_idx, pc.interval_idx, true};
  });

  SweepReport rep = make_report(ctx, best.theta, min_area_rect_annulus_fixed(pts, best.theta));
  return rep;
}

SweepReport min_width_min_area_rect_annulus_any(std::span<const Point> pts, int threads) {
  require_solvable(pts);
  if (pts.size() < 2) return trivial_report(pts, Shape::rect, Objective::width_area);
  const SweepContext ctx = build_context(pts);
  const std::vector<Piece> pieces = piece_list(ctx);

  const Candidate best = reduce_pieces(pieces, threads, true, [&](const Piece& pc) {
    const ResolvedPiece rp = resolve_piece(ctx, pc);
    const Sinusoid area_fn =
        add(multiply(rp.height_r, rp.width_r), multiply(rp.height_e, rp.width_e).negated());
    const ThetaInterval sub = ThetaInterval::closed(rp.lo, rp.hi);
    const Extremum ex = extremize(PiecewiseSinusoid::single(sub, area_fn), sub, true);
    return Candidate{ex.value, ex.theta, pc.class_idx, pc.interval_idx, true};
  });

  // Enumerate every orientation tying the global minimum area and keep the
  // narrowest annulus among them.
  std::vector<double> cand_thetas;
  for (const Piece& pc : pieces) {
    const ResolvedPiece rp = resolve_piece(ctx, pc);
    const Sinusoid area_fn =
        add(multiply(rp.height_r, rp.width_r), multiply(rp.height_e, rp.width_e).negated());
    const ThetaInterval sub = ThetaInterval::closed(rp.lo, rp.hi);
    const PiecewiseSinusoid pw = PiecewiseSinusoid::single(sub, area_fn);
    for (const OptRange& hit :
         extremize_all(pw, sub, true, ctx.tol.eps_area, 1e-12 * ctx.tol.diameter * ctx.tol.diameter)) {
      if (hit.value > best.value + ctx.tol.eps_area) continue;
      cand_thetas.push_back(hit.lo);
      if (hit.hi > hit.lo) {
        cand_thetas.push_back(hit.hi);
        // Width varies over an area plateau; minimize it analytically.
        const PiecewiseSinusoid wfn = annulus_width_fn(ctx, rp, hit.lo, hit.hi);
        cand_thetas.push_back(extremize(wfn, ThetaInterval::closed(hit.lo, hit.hi), true).theta);
      }
    }
  }
  std::sort(cand_thetas.begin(), cand_thetas.end());
  cand_thetas.erase(std::unique(cand_thetas.begin(), cand_thetas.end(),
                                [](double a, double b) { return b - a < kCutEps; }),
                    cand_thetas.end());

  double best_theta = best.theta;
  FixedSolveResult best_fixed = min_width_min_area_rect_annulus_fixed(pts, best.theta);
  for (double t : cand_thetas) {
    FixedSolveResult r = min_width_min_area_rect_annulus_fixed(pts, t);
    if (r.area > best.value + ctx.tol.eps_area) continue;  // grazing tie, not a true minimizer
    if (r.width < best_fixed.width - ctx.tol.eps_geo) {
      best_fixed = std::move(r);
      best_theta = t;
    }
  }
  return make_report(ctx, best_theta, std::move(best_fixed));
}

// ---------------------------------------------------------------------------
// Uniform rectangular annuli over all orientations
// ---------------------------------------------------------------------------

namespace {

struct UniformFns {
  // Per refined primary interval: the width envelope and the annulus area.
  std::vector<PiecewiseSinusoid> width_fn;
  std::vector<PiecewiseSinusoid> area_fn;
};

UniformFns build_uniform_fns(const SweepContext& ctx) {
  UniformFns out;
  out.width_fn.reserve(ctx.prims.size());
  out.area_fn.reserve(ctx.prims.size());
  const auto& P = ctx.pts;
  for (const PrimaryInterval& prim : ctx.prims) {
    const ThetaInterval I = ThetaInterval::closed(prim.lo, prim.hi);
    const ExtremeTuple& q = prim.tuple;
    std::vector<PiecewiseSinusoid> fps;
    fps.reserve(P.size());
    for (size_t i = 0; i < P.size(); ++i) {
      const Sinusoid sides[4] = {
          frame_dy_sinusoid(P[q.top], P[i]),
          frame_dy_sinusoid(P[i], P[q.bottom]),
          frame_dx_sinusoid(P[i], P[q.left]),
          frame_dx_sinusoid(P[q.right], P[i]),
      };
      fps.push_back(envelope_of(sides, I, false));
    }
    PiecewiseSinusoid w = upper_envelope(fps, I);

    const Sinusoid half_peri = add(frame_dy_sinusoid(P[q.top], P[q.bottom]),
                                   frame_dx_sinusoid(P[q.right], P[q.left]));
    PiecewiseSinusoid area;
    for (const SinPiece& p : w.pieces()) {
      // peri * w - 4 w^2 with peri = 2 * half_peri
      const Sinusoid a =
          add(multiply(half_peri, p.fn).scaled(2.0), multiply(p.fn, p.fn).scaled(-4.0));
      area.append({p.lo, p.hi, a, p.src});
    }
    out.width_fn.push_back(std::move(w));
    out.area_fn.push_back(std::move(area));
  }
  return out;
}

struct StageOne {
  double value = 0.0;
  std::vector<OptRange> hits;  // global-optimum components across intervals
};

StageOne minimize_over_intervals(const SweepContext& ctx, const std::vector<PiecewiseSinusoid>& fns,
                                 double tie_tol, double plateau_tol) {
  StageOne out;
  bool have = false;
  for (size_t i = 0; i < fns.size(); ++i) {
    const ThetaInterval I = ThetaInterval::closed(ctx.prims[i].lo, ctx.prims[i].hi);
    const Extremum ex = extremize(fns[i], I, true);
    if (!have || ex.value < out.value) {
      out.value = ex.value;
      have = true;
    }
  }
  for (size_t i = 0; i < fns.size(); ++i) {
    const ThetaInterval I = ThetaInterval::closed(ctx.prims[i].lo, ctx.prims[i].hi);
    for (const OptRange& hit : extremize_all(fns[i], I, true, tie_tol, plateau_tol)) {
      if (hit.value <= out.value + tie_tol) out.hits.push_back(hit);
    }
  }
  std::sort(out.hits.begin(), out.hits.end(),
            [](const OptRange& a, const OptRange& b) { return a.lo < b.lo; });
  std::vector<OptRange> merged;
  for (const OptRange& h : out.hits) {
    if (!merged.empty() && h.lo <= merged.back().hi + kCutEps) {
      merged.back().hi = std::max(merged.back().hi, h.hi);
    } else {
      merged.push_back(h);
    }
  }
  out.hits = std::move(merged);
  return out;
}

}  // namespace

SweepReport uniform_rect_any(std::span<const Point> pts, Objective objective, int threads) {
  require_solvable(pts);
  (void)threads;  // the per-interval envelope pass is cheap enough sequentially
  if (pts.size() < 2) return trivial_report(pts, Shape::uniform_rect, Objective::area);
  const SweepContext ctx = build_context(pts);
  const UniformFns fns = build_uniform_fns(ctx);

  const bool primary_width = objective == Objective::width || objective == Objective::area_width;
  const double tie_tol = primary_width ? ctx.tol.eps_geo : ctx.tol.eps_area;
  const double plateau_tol = 1e-12 * (primary_width ? ctx.tol.diameter
                                                    : ctx.tol.diameter * ctx.tol.diameter);
  const StageOne stage =
      minimize_over_intervals(ctx, primary_width ? fns.width_fn : fns.area_fn, tie_tol, plateau_tol);

  // Candidate orientations: every component endpoint plus, for plateaus and
  // bicriteria runs, the analytic optimum of the secondary function inside.
  const bool bicriteria = objective == Objective::area_width || objective == Objective::width_area;
  std::vector<double> cands;
  for (const OptRange& hit : stage.hits) {
    cands.push_back(hit.lo);
    if (hit.hi > hit.lo) cands.push_back(hit.hi);
    if (bicriteria && hit.hi > hit.lo) {
      const auto& secondary = primary_width ? fns.area_fn : fns.width_fn;
      for (size_t i = 0; i < secondary.size(); ++i) {
        const double a = std::max(hit.lo, ctx.prims[i].lo);
        const double b = std::min(hit.hi, ctx.prims[i].hi);
        if (b - a > kCutEps) {
          cands.push_back(extremize(secondary[i], ThetaInterval::closed(a, b), true).theta);
        }
      }
    }
  }

  double best_theta = cands.front();
  FixedSolveResult best = uniform_rect_annulus_fixed(pts, best_theta);
  for (size_t i = 1; i < cands.size(); ++i) {
    const FixedSolveResult r = uniform_rect_annulus_fixed(pts, cands[i]);
    bool take = false;
    if (!bicriteria) {
      take = primary_width ? r.width < best.width - ctx.tol.eps_geo
                           : r.area < best.area - ctx.tol.eps_area;
    } else if (primary_width) {  // area_width: min area among width minimizers
      take = r.width <= stage.value + tie_tol && r.area < best.area - ctx.tol.eps_area;
    } else {  // width_area: min width among area minimizers
      take = r.area <= stage.value + tie_tol && r.width < best.width - ctx.tol.eps_geo;
    }
    if (take) {
      best = r;
      best_theta = cands[i];
    }
  }
  return make_report(ctx, best_theta, std::move(best));
}

SweepReport min_area_min_width_rect_annulus_any(std::span<const Point> pts, int threads) {
  require_solvable(pts);
  (void)threads;
  if (pts.size() < 2) return trivial_report(pts, Shape::rect, Objective::area_width);
  const SweepContext ctx = build_context(pts);
  const UniformFns fns = build_uniform_fns(ctx);

  const StageOne stage =
      minimize_over_intervals(ctx, fns.width_fn, ctx.tol.eps_geo, 1e-12 * ctx.tol.diameter);
  const double w_star = stage.value;

  std::vector<double> cands;
  for (const OptRange& hit : stage.hits) {
    cands.push_back(hit.lo);
    if (hit.hi <= hit.lo) continue;
    cands.push_back(hit.hi);
    // Width is pinned at w* across the plateau; minimize the annulus area per
    // class subject to the inner rectangle containing the uniform inner one.
    for (const Piece& pc : piece_list(ctx)) {
      const ResolvedPiece rp = resolve_piece(ctx, pc);
      const double a = std::max(hit.lo, rp.lo);
      const double b = std::min(hit.hi, rp.hi);
      if (b - a <= kCutEps) continue;
      const auto& P = ctx.pts;
      const ExtremeTuple& q = rp.prim->tuple;
      // Slack of each containment constraint E >= shrunk rectangle, as
      // base-offset sinusoids; feasibility flips only at their roots.
      const Sinusoid slacks[4] = {
          frame_dy_sinusoid(P[q.top], P[rp.rt]).negated().plus_constant(w_star),
          frame_dy_sinusoid(P[rp.rb], P[q.bottom]).negated().plus_constant(w_star),
          frame_dx_sinusoid(P[rp.rl], P[q.left]).negated().plus_constant(w_star),
          frame_dx_sinusoid(P[q.right], P[rp.rr]).negated().plus_constant(w_star),
      };
      std::vector<double> cuts = {a, b};
      for (const Sinusoid& s : slacks) {
        for (double r : s.roots(a, b)) {
          if (r > a + kCutEps && r < b - kCutEps) cuts.push_back(r);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      const Sinusoid area_fn =
          add(multiply(rp.height_r, rp.width_r), multiply(rp.height_e, rp.width_e).negated());
      for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = (cuts[k] + cuts[k + 1]) / 2.0;
        bool feasible = true;
        for (const Sinusoid& s : slacks) feasible = feasible && s.value(mid) >= -ctx.tol.eps_geo;
        if (!feasible) continue;
        const ThetaInterval sub = ThetaInterval::closed(cuts[k], cuts[k + 1]);
        cands.push_back(extremize(PiecewiseSinusoid::single(sub, area_fn), sub, true).theta);
      }
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](double x, double y) { return y - x < kCutEps; }),
              cands.end());

  double best_theta = cands.front();
  FixedSolveResult best = min_area_min_width_rect_annulus_fixed(pts, best_theta);
  for (size_t i = 1; i < cands.size(); ++i) {
    const FixedSolveResult r = min_area_min_width_rect_annulus_fixed(pts, cands[i]);
    if (r.width > w_star + ctx.tol.eps_geo) continue;
    if (r.area < best.area - ctx.tol.eps_area) {
      best = r;
      best_theta = cands[i];
    }
  }
  SweepReport rep = make_report(ctx, best_theta, std::move(best));
  rep.diag.t = static_cast<int>(stage.hits.size());
  return rep;
}

// ---------------------------------------------------------------------------
// Square annuli over all orientations
// ---------------------------------------------------------------------------

SweepReport square_annulus_any(std::span<const Point> pts, Objective objective, int threads) {
  require_solvable(pts);
  if (pts.size() < 2) return trivial_report(pts, Shape::square, Objective::area);
  const SweepContext ctx = build_context(pts);
  const std::vector<Piece> pieces = piece_list(ctx);

  const bool primary_width = objective == Objective::width || objective == Objective::area_width;
  const bool bicriteria = objective == Objective::area_width || objective == Objective::width_area;
  const double tie_tol = primary_width ? ctx.tol.eps_geo : ctx.tol.eps_area;
  const double plateau_tol = 1e-12 * (primary_width ? ctx.tol.diameter
                                                    : ctx.tol.diameter * ctx.tol.diameter);

  auto piece_fn = [&](const Piece& pc) -> PiecewiseSinusoid {
    const MERClass& cls = ctx.classes[pc.class_idx];
    const ElementaryInterval& iv = ctx.elems[pc.interval_idx];
    const PrimaryInterval& prim = ctx.prims[iv.primary_index];
    const PiecewiseSinusoid delta =
        compute_delta_impl(ctx.pts, prim, cls.key, iv.lo, iv.hi);
    const Sinusoid d = d_sinusoid(ctx, prim);
    PiecewiseSinusoid out;
    for (const SinPiece& p : delta.pieces()) {
      if (primary_width) {
        out.append({p.lo, p.hi, add(d.scaled(0.5), p.fn.scaled(-0.5)), p.src});
      } else {
        out.append({p.lo, p.hi, add(multiply(d, d), multiply(p.fn, p.fn).negated()), p.src});
      }
    }
    return out;
  };

  // Class-independent fallback: the annulus with an empty inner square.
  auto baseline_fn = [&](const PrimaryInterval& prim) -> PiecewiseSinusoid {
    const Sinusoid d = d_sinusoid(ctx, prim);
    const ThetaInterval I = ThetaInterval::closed(prim.lo, prim.hi);
    return PiecewiseSinusoid::single(I, primary_width ? d.scaled(0.5) : multiply(d, d));
  };

  Candidate best = reduce_pieces(pieces, threads, true, [&](const Piece& pc) {
    const PiecewiseSinusoid fn = piece_fn(pc);
    const ThetaInterval sub = ThetaInterval::closed(fn.domain_lo(), fn.domain_hi());
    const Extremum ex = extremize(fn, sub, true);
    return Candidate{ex.value, ex.theta, pc.class_idx, pc.interval_idx, true};
  });
  for (size_t i = 0; i < ctx.prims.size(); ++i) {
    const PiecewiseSinusoid fn = baseline_fn(ctx.prims[i]);
    const ThetaInterval I = ThetaInterval::closed(ctx.prims[i].lo, ctx.prims[i].hi);
    const Extremum ex = extremize(fn, I, true);
    const Candidate c{ex.value, ex.theta, -1, static_cast<int>(i), true};
    if (improves(c, best, true)) best = c;
  }

  std::vector<double> cands = {best.theta};
  if (bicriteria) {
    auto harvest = [&](const PiecewiseSinusoid& fn) {
      const ThetaInterval sub = ThetaInterval::closed(fn.domain_lo(), fn.domain_hi());
      for (const OptRange& hit : extremize_all(fn, sub, true, tie_tol, plateau_tol)) {
        if (hit.value > best.value + tie_tol) continue;
        cands.push_back(hit.lo);
        if (hit.hi > hit.lo) {
          cands.push_back(hit.hi);
          // Secondary objective on a plateau is monotone in d(theta):
          // area = 4 d w* - 4 w*^2 wants d minimal; width = (d - sqrt(d^2 - a*)) / 2
          // wants d maximal.
          for (size_t i = 0; i < ctx.prims.size(); ++i) {
            const double a = std::max(hit.lo, ctx.prims[i].lo);
            const double b = std::min(hit.hi, ctx.prims[i].hi);
            if (b - a <= kCutEps) continue;
            const Sinusoid d = d_sinusoid(ctx, ctx.prims[i]);
            const ThetaInterval sub2 = ThetaInterval::closed(a, b);
            const PiecewiseSinusoid dpw = PiecewiseSinusoid::single(sub2, d);
            cands.push_back(extremize(dpw, sub2, primary_width).theta);
          }
        }
      }
    };
    for (const Piece& pc : pieces) harvest(piece_fn(pc));
    for (const PrimaryInterval& prim : ctx.prims) harvest(baseline_fn(prim));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](double x, double y) { return y - x < kCutEps; }),
                cands.end());
  }

  double best_theta = cands.front();
  FixedSolveResult bestf = min_width_square_annulus_fixed(pts, best_theta);
  for (size_t i = 1; i < cands.size(); ++i) {
    const FixedSolveResult r = min_width_square_annulus_fixed(pts, cands[i]);
    const double primary_val = primary_width ? r.width : r.area;
    if (primary_val > best.value + tie_tol) continue;
    const bool take = primary_width ? r.area < bestf.area - ctx.tol.eps_area
                                    : r.width < bestf.width - ctx.tol.eps_geo;
    if (take) {
      bestf = r;
      best_theta = cands[i];
    }
  }
  return make_report(ctx, best_theta, std::move(bestf));
}

// ---------------------------------------------------------------------------
// Largest empty square / rectangle over all orientations
// ---------------------------------------------------------------------------

SweepReport largest_empty_square_any(std::span<const Point> pts, int threads) {
  if (pts.size() < 2) throw std::invalid_argument("largest empty square needs two distinct points");
  const SweepContext ctx = build_context(pts);
  if (ctx.tol.diameter <= 0.0) throw std::invalid_argument("all points coincide");
  const std::vector<Piece> pieces = piece_list(ctx);

  const Candidate best = reduce_pieces(pieces, threads, false, [&](const Piece& pc) {
    const ResolvedPiece rp = resolve_piece(ctx, pc);
    const ThetaInterval sub = ThetaInterval::closed(rp.lo, rp.hi);
    const Sinusoid fs[2] = {rp.height_e, rp.width_e};
    const Extremum ex = extremize(envelope_of(fs, sub, false), sub, false);
    return Candidate{ex.value, ex.theta, pc.class_idx, pc.interval_idx, true};
  });

  SweepReport rep = make_report(ctx, best.theta, largest_empty_square_fixed_solve(pts, best.theta));
  rep.side = rep.witness.width;
  return rep;
}

SweepReport largest_empty_rect_any(std::span<const Point> pts, int threads) {
  if (pts.size() < 2) throw std::invalid_argument("largest empty rectangle needs two distinct points");
  const SweepContext ctx = build_context(pts);
  const std::vector<Piece> pieces = piece_list(ctx);

  const Candidate best = reduce_pieces(pieces, threads, false, [&](const Piece& pc) {
    const ResolvedPiece rp = resolve_piece(ctx, pc);
    const ThetaInterval sub = ThetaInterval::closed(rp.lo, rp.hi);
    const Sinusoid area_fn = multiply(rp.height_e, rp.width_e);
    const Extremum ex = extremize(PiecewiseSinusoid::single(sub, area_fn), sub, false);
    return Candidate{ex.value, ex.theta, pc.class_idx, pc.interval_idx, true};
  });

  SweepReport rep = make_report(ctx, best.theta, largest_empty_rect_fixed_solve(pts, best.theta));
  rep.side = std::min(rep.witness.annulus.inner.width(), rep.witness.annulus.inner.height());
  return rep;
}

SweepReport solve_any(std::span<const Point> pts, Shape shape, Objective objective, int threads) {
  switch (shape) {
    case Shape::square:
      if (objective != Objective::largest) return square_annulus_any(pts, objective, threads);
      break;
    case Shape::uniform_rect:
      if (objective != Objective::largest) return uniform_rect_any(pts, objective, threads);
      break;
    case Shape::rect:
      switch (objective) {
        case Objective::width: {
          SweepReport rep = uniform_rect_any(pts, Objective::width, threads);
          return rep;
        }
        case Objective::area:
          return min_area_rect_annulus_any(pts, threads);
        case Objective::area_width:
          return min_area_min_width_rect_annulus_any(pts, threads);
        case Objective::width_area:
          return min_width_min_area_rect_annulus_any(pts, threads);
        default:
          break;
      }
      break;
    case Shape::empty_rect:
      if (objective == Objective::largest) return largest_empty_rect_any(pts, threads);
      break;
    case Shape::empty_square:
      if (objective == Objective::largest) return largest_empty_square_any(pts, threads);
      break;
  }
  throw std::invalid_argument("unsupported shape/objective combination");
}

double square_width_cross_check(std::span<const Point> pts) {
  if (pts.size() > 30) throw std::invalid_argument("cross-check mode is limited to 30 points");
  if (pts.size() < 2) return 0.0;
  const SweepContext ctx = build_context(pts);

  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ctx.elems.size(); ++i) {
    const ElementaryInterval& iv = ctx.elems[i];
    const PrimaryInterval& prim = ctx.prims[iv.primary_index];
    const Sinusoid d = d_sinusoid(ctx, prim);
    const ThetaInterval I = ThetaInterval::closed(iv.lo, iv.hi);

    std::vector<PiecewiseSinusoid> candidates;
    candidates.push_back(PiecewiseSinusoid::single(I, d.scaled(0.5)));
    for (size_t c = 0; c < ctx.classes.size(); ++c) {
      const MERClass& cls = ctx.classes[c];
      if (cls.first_interval > static_cast<int>(i) || cls.last_interval < static_cast<int>(i)) {
        continue;
      }
      const PiecewiseSinusoid delta = compute_delta_impl(ctx.pts, prim, cls.key, iv.lo, iv.hi);
      PiecewiseSinusoid w;
      for (const SinPiece& p : delta.pieces()) {
        w.append({p.lo, p.hi, add(d.scaled(0.5), p.fn.scaled(-0.5)), p.src});
      }
      candidates.push_back(std::move(w));
    }
    const PiecewiseSinusoid env = lower_envelope(candidates, I);
    best = std::min(best, extremize(env, I, true).value);
  }
  return best;
}

}  // namespace annulus
