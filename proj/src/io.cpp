#include "annulus/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace annulus {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_json_number(double v) {
  if (std::isnan(v)) return "null";
  return fmt_double(v);
}

void append_indices(std::string& s, const std::vector<int>& idx) {
  s += '[';
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  s += ']';
}

void append_rect(std::string& s, const OrientedRect& r) {
  s += "{\"theta\":";
  s += fmt_double(r.theta.radians());
  s += ",\"corners\":[";
  const auto cs = r.corners();
  for (int i = 0; i < 4; ++i) {
    if (i) s += ',';
    s += '[';
    s += fmt_double(cs[i].x);
    s += ',';
    s += fmt_double(cs[i].y);
    s += ']';
  }
  s += "]}";
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::square: return "square";
    case Shape::uniform_rect: return "urect";
    case Shape::rect: return "rect";
    case Shape::empty_rect: return "empty-rect";
    case Shape::empty_square: return "empty-square";
  }
  return "?";
}

std::string objective_name(Objective o) {
  switch (o) {
    case Objective::width: return "width";
    case Objective::area: return "area";
    case Objective::area_width: return "area-width";
    case Objective::width_area: return "width-area";
    case Objective::largest: return "largest";
  }
  return "?";
}

bool combination_supported(Shape shape, Objective objective) {
  const bool empty_shape = shape == Shape::empty_rect || shape == Shape::empty_square;
  return empty_shape ? objective == Objective::largest : objective != Objective::largest;
}

}  // namespace

Shape parse_shape(const std::string& s) {
  if (s == "square") return Shape::square;
  if (s == "urect") return Shape::uniform_rect;
  if (s == "rect") return Shape::rect;
  if (s == "empty-rect") return Shape::empty_rect;
  if (s == "empty-square") return Shape::empty_square;
  throw InputError("unknown shape: " + s);
}

Objective parse_objective(const std::string& s) {
  if (s == "width") return Objective::width;
  if (s == "area") return Objective::area;
  if (s == "area-width") return Objective::area_width;
  if (s == "width-area") return Objective::width_area;
  if (s == "largest") return Objective::largest;
  throw InputError("unknown objective: " + s);
}

std::vector<Point> parse_points_csv(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;

    const size_t comma = trimmed.find(',');
    if (comma == std::string::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected \"x,y\"");
    }
    try {
      size_t used_x = 0, used_y = 0;
      const std::string xs = trimmed.substr(0, comma);
      const std::string ys = trimmed.substr(comma + 1);
      const double x = std::stod(xs, &used_x);
      const double y = std::stod(ys, &used_y);
      if (xs.find_first_not_of(" \t", used_x) != std::string::npos ||
          ys.find_first_not_of(" \t", used_y) != std::string::npos) {
        throw InputError("line " + std::to_string(line_no) + ": trailing characters");
      }
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw InputError("line " + std::to_string(line_no) + ": coordinate is not finite");
      }
      pts.emplace_back(x, y);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
      throw InputError("line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return pts;
}

std::vector<Point> load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  return parse_points_csv(in);
}

RunOutcome execute(const ProblemSpec& spec, std::vector<Point> pts) {
  RunOutcome out;
  out.duplicates_removed = dedupe_points(pts);
  if (pts.empty()) throw InputError("no points after ingestion");

  int threads = spec.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;

  if (spec.any_orientation) {
    const SweepReport rep = solve_any(pts, spec.shape, spec.objective, threads);
    out.theta_star = rep.theta_star;
    out.result = rep.witness;
    out.diag = rep.diag;
  } else {
    const double theta = Orientation::problem(spec.theta).radians();
    out.theta_star = theta;
    out.result = solve_fixed(pts, theta, spec.shape, spec.objective);
    out.diag.degenerate = out.result.degenerate;
    out.diag.r_at_star = out.result.mer_count;
  }

  if (spec.run_oracle) {
    OracleConfig cfg;
    cfg.theta_samples = spec.theta_samples;
    if (spec.any_orientation) {
      out.oracle_any_value = oracle_any(pts, spec.shape, spec.objective, cfg);
    } else {
      out.oracle_fixed_value = oracle_fixed(pts, spec.theta, spec.shape, spec.objective, cfg);
    }
  }
  return out;
}

std::string report_json(const ProblemSpec& spec, const RunOutcome& out, int n_points) {
  const bool empty_shape = spec.shape == Shape::empty_rect || spec.shape == Shape::empty_square;
  const FixedSolveResult& r = out.result;

  std::string s = "{";
  s += "\"spec\":{\"shape\":\"" + shape_name(spec.shape) + "\"";
  s += ",\"objective\":\"" + objective_name(spec.objective) + "\"";
  s += ",\"orientation\":\"";
  s += spec.any_orientation ? "any" : ("fixed:" + fmt_double(spec.theta));
  s += "\",\"input\":\"" + spec.input_path + "\"";
  s += ",\"seed\":" + std::to_string(spec.seed);
  s += ",\"oracle\":";
  s += spec.run_oracle ? "true" : "false";
  s += "}";
  s += ",\"n\":" + std::to_string(n_points);
  s += ",\"theta_star\":" + fmt_double(out.theta_star);
  s += ",\"width\":" + fmt_json_number(r.width);
  s += ",\"area\":" + fmt_json_number(r.area);
  if (empty_shape) {
    const double side = spec.shape == Shape::empty_square
                            ? r.width
                            : std::min(r.annulus.inner.width(), r.annulus.inner.height());
    s += ",\"side\":" + fmt_json_number(side);
  }
  s += ",\"outer\":";
  append_rect(s, r.annulus.outer);
  s += ",\"inner\":";
  append_rect(s, r.annulus.inner);
  s += ",\"supports\":{\"outer\":";
  append_indices(s, r.outer_supports);
  s += ",\"inner\":";
  append_indices(s, r.inner_supports);
  s += "}";
  s += ",\"diagnostics\":{";
  s += "\"r\":" + (out.diag.r_at_star >= 0 ? std::to_string(out.diag.r_at_star) : std::string("null"));
  s += ",\"t\":" + (out.diag.t >= 0 ? std::to_string(out.diag.t) : std::string("null"));
  s += ",\"pairs_T\":" +
       (out.diag.pairs_T > 0 ? std::to_string(out.diag.pairs_T) : std::string("null"));
  s += ",\"primary_intervals\":" + std::to_string(out.diag.primary_intervals);
  s += ",\"elementary_intervals\":" + std::to_string(out.diag.elementary_intervals);
  s += ",\"degenerate\":";
  s += out.diag.degenerate ? "true" : "false";
  s += "}";
  if (out.oracle_fixed_value) {
    s += ",\"oracle_result\":{\"width\":" + fmt_json_number(out.oracle_fixed_value->width);
    s += ",\"area\":" + fmt_json_number(out.oracle_fixed_value->area);
    s += ",\"side\":" + fmt_json_number(out.oracle_fixed_value->side);
    s += ",\"error_bound\":" + fmt_json_number(out.oracle_fixed_value->error_bound) + "}";
  } else if (out.oracle_any_value) {
    s += ",\"oracle_result\":{\"value\":" + fmt_json_number(out.oracle_any_value->value);
    s += ",\"secondary\":" + fmt_json_number(out.oracle_any_value->secondary);
    s += ",\"theta_at\":" + fmt_json_number(out.oracle_any_value->theta_at);
    s += ",\"grid_step\":" + fmt_json_number(out.oracle_any_value->grid_step) + "}";
  }
  s += ",\"version\":\"";
  s += kVersion;
  s += "\"}";
  s += "\n";
  return s;
}

std::string render_svg(const std::vector<Point>& pts, const RunOutcome& out) {
  const FixedSolveResult& r = out.result;
  double lx = pts.empty() ? 0.0 : pts[0].x, hx = lx, ly = pts.empty() ? 0.0 : pts[0].y, hy = ly;
  auto grow = [&](Point p) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  };
  for (const Point& p : pts) grow(p);
  for (const Point& c : r.annulus.outer.corners()) grow(c);
  const double span = std::max({hx - lx, hy - ly, 1e-9});
  const double margin = 0.05 * span;
  lx -= margin;
  hx += margin;
  ly -= margin;
  hy += margin;

  const double view = 800.0;
  const double scale = view / std::max(hx - lx, hy - ly);
  auto X = [&](double x) { return (x - lx) * scale; };
  auto Y = [&](double y) { return (hy - y) * scale; };  // flip for SVG axes

  auto poly_path = [&](const std::array<Point, 4>& cs) {
    std::string p = "M";
    for (int i = 0; i < 4; ++i) {
      if (i) p += "L";
      p += fmt_double(X(cs[i].x)) + " " + fmt_double(Y(cs[i].y));
    }
    p += "Z";
    return p;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt_double((hx - lx) * scale)
      << " " << fmt_double((hy - ly) * scale) << "\">\n";
  const bool has_inner = r.annulus.inner.area() > 0.0 || r.annulus.inner.width() > 0.0 ||
                         r.annulus.inner.height() > 0.0;
  // Shade the annulus region (outer minus inner) with an even-odd fill.
  svg << "<path fill=\"#9ecae1\" fill-opacity=\"0.6\" fill-rule=\"evenodd\" d=\""
      << poly_path(r.annulus.outer.corners());
  if (has_inner) svg << " " << poly_path(r.annulus.inner.corners());
  svg << "\"/>\n";
  svg << "<path fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" d=\""
      << poly_path(r.annulus.outer.corners()) << "\"/>\n";
  if (has_inner) {
    svg << "<path fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" d=\""
        << poly_path(r.annulus.inner.corners()) << "\"/>\n";
  }
  for (const Point& p : pts) {
    svg << "<circle cx=\"" << fmt_double(X(p.x)) << "\" cy=\"" << fmt_double(Y(p.y))
        << "\" r=\"2\" fill=\"#000\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

int run(const ProblemSpec& spec) {
  if (!combination_supported(spec.shape, spec.objective)) {
    std::cerr << "unsupported combination: shape=" << shape_name(spec.shape)
              << " objective=" << objective_name(spec.objective) << "\n";
    return 3;
  }
  std::vector<Point> pts;
  RunOutcome out;
  int n = 0;
  try {
    pts = load_points_csv(spec.input_path);
    const size_t raw = pts.size();
    out = execute(spec, pts);
    n = static_cast<int>(raw) - out.duplicates_removed;
    if (n < 1) throw InputError("no points after deduplication");
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  const std::string json = report_json(spec, out, n);
  if (spec.output_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream f(spec.output_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write report: " << spec.output_path << "\n";
      return 2;
    }
    f << json;
  }
  if (!spec.svg_path.empty()) {
    std::ofstream f(spec.svg_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write svg: " << spec.svg_path << "\n";
      return 2;
    }
    f << render_svg(pts, out);
  }
  return 0;
}

}  // namespace annulus
