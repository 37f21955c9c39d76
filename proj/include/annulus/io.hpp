#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "annulus/fixed_solvers.hpp"
#include "annulus/oracle.hpp"
#include "annulus/rotating_solvers.hpp"

namespace annulus {

inline constexpr const char* kVersion = "annulus 0.1.0";

/// Input problems the tool can run, mirroring the solver matrix.
struct ProblemSpec {
  Shape shape = Shape::square;
  Objective objective = Objective::width;
  bool any_orientation = false;
  double theta = 0.0;  // fixed-orientation runs
  std::string input_path;
  std::string output_path;   // empty: stdout
  std::string svg_path;      // empty: none
  bool run_oracle = false;
  int threads = 0;           // 0: all cores
  long long seed = 0;
  int theta_samples = 20000;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Shape parse_shape(const std::string& s);
Objective parse_objective(const std::string& s);

/// "x,y" per line; '#' starts a comment line; blank lines and CRLF allowed.
/// Throws InputError naming the offending line.
std::vector<Point> parse_points_csv(std::istream& in);
std::vector<Point> load_points_csv(const std::string& path);

struct RunOutcome {
  double theta_star = 0.0;
  FixedSolveResult result;
  SweepDiagnostics diag;
  int duplicates_removed = 0;
  std::optional<OracleValue> oracle_fixed_value;
  std::optional<OracleGridValue> oracle_any_value;
};

/// Executes the solve described by spec on already-ingested points.
RunOutcome execute(const ProblemSpec& spec, std::vector<Point> pts);

/// Fixed-field-order JSON report with 17-significant-digit numbers.
std::string report_json(const ProblemSpec& spec, const RunOutcome& out, int n_points);

std::string render_svg(const std::vector<Point>& pts, const RunOutcome& out);

/// Full pipeline: ingest, solve, write report (and SVG when requested).
/// Returns the process exit status: 0 ok, 2 input error, 3 unsupported combination.
int run(const ProblemSpec& spec);

}  // namespace annulus
