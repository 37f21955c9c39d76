#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "annulus/io.hpp"
#include "annulus/oracle.hpp"
#include "annulus/rotating_solvers.hpp"

namespace py = pybind11;
using namespace annulus;

namespace {

std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xy) {
  std::vector<Point> pts;
  pts.reserve(xy.size());
  for (const auto& [x, y] : xy) pts.emplace_back(x, y);
  return pts;
}

py::dict rect_dict(const OrientedRect& r) {
  py::dict d;
  d["theta"] = r.theta.radians();
  py::list corners;
  for (const Point& c : r.corners()) corners.append(py::make_tuple(c.x, c.y));
  d["corners"] = corners;
  d["width"] = r.width();
  d["height"] = r.height();
  d["area"] = r.area();
  return d;
}

py::dict result_dict(double theta_star, const FixedSolveResult& r) {
  py::dict d;
  d["theta_star"] = theta_star;
  d["width"] = r.width;
  d["area"] = r.area;
  d["outer"] = rect_dict(r.annulus.outer);
  d["inner"] = rect_dict(r.annulus.inner);
  d["outer_supports"] = r.outer_supports;
  d["inner_supports"] = r.inner_supports;
  d["degenerate"] = r.degenerate;
  if (r.mer_count >= 0) d["mer_count"] = r.mer_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_annulus, m) {
  m.doc() = "Minimum-width/area square, uniform and general rectangular annuli, "
            "plus largest empty rectangles and squares, in fixed or arbitrary orientation.";

  m.def(
      "solve_fixed",
      [](const std::vector<std::pair<double, double>>& xy, double theta, const std::string& shape,
         const std::string& objective) {
        const auto pts = to_points(xy);
        const FixedSolveResult r =
            solve_fixed(pts, theta, parse_shape(shape), parse_objective(objective));
        return result_dict(Orientation::problem(theta).radians(), r);
      },
      py::arg("points"), py::arg("theta"), py::arg("shape"), py::arg("objective"));

  m.def(
      "solve_any",
      [](const std::vector<std::pair<double, double>>& xy, const std::string& shape,
         const std::string& objective, int threads) {
        const auto pts = to_points(xy);
        const SweepReport rep = solve_any(pts, parse_shape(shape), parse_objective(objective), threads);
        py::dict d = result_dict(rep.theta_star, rep.witness);
        py::dict diag;
        diag["primary_intervals"] = rep.diag.primary_intervals;
        diag["elementary_intervals"] = rep.diag.elementary_intervals;
        diag["mer_classes"] = rep.diag.mer_classes;
        diag["pairs_T"] = rep.diag.pairs_T;
        diag["t"] = rep.diag.t;
        diag["r"] = rep.diag.r_at_star;
        diag["degenerate"] = rep.diag.degenerate;
        d["diagnostics"] = diag;
        return d;
      },
      py::arg("points"), py::arg("shape"), py::arg("objective"), py::arg("threads") = 1);

  m.def(
      "enumerate_mers",
      [](const std::vector<std::pair<double, double>>& xy, double theta) {
        const auto pts = to_points(xy);
        const Tolerances tol = Tolerances::for_points(pts);
        std::vector<Point> fpts;
        fpts.reserve(pts.size());
        for (const Point& p : pts) fpts.push_back(to_frame(p, theta));
        const OrientedRect box = enclosing_rect(pts, theta);
        py::list out;
        for (const MaxEmptyRect& m : enumerate_mers(fpts, box, tol.eps_geo)) {
          py::dict d = rect_dict(m.rect);
          d["supports"] = py::make_tuple(m.top, m.bottom, m.left, m.right);
          out.append(d);
        }
        return out;
      },
      py::arg("points"), py::arg("theta") = 0.0);

  m.def(
      "oracle_any",
      [](const std::vector<std::pair<double, double>>& xy, const std::string& shape,
         const std::string& objective, int theta_samples) {
        OracleConfig cfg;
        cfg.theta_samples = theta_samples;
        const OracleGridValue v =
            oracle_any(to_points(xy), parse_shape(shape), parse_objective(objective), cfg);
        py::dict d;
        d["value"] = v.value;
        d["secondary"] = v.secondary;
        d["theta_at"] = v.theta_at;
        d["grid_step"] = v.grid_step;
        return d;
      },
      py::arg("points"), py::arg("shape"), py::arg("objective"), py::arg("theta_samples") = 20000);

  m.attr("__version__") = "0.1.0";
}
