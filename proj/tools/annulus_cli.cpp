#include <CLI11.hpp>

#include "annulus/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Optimal square/rectangular annuli and empty rectangles over point sets"};

  std::string shape = "square";
  std::string objective = "width";
  std::string orientation = "any";
  annulus::ProblemSpec spec;

  app.add_option("--shape", shape, "square | urect | rect | empty-rect | empty-square")
      ->capture_default_str();
  app.add_option("--objective", objective, "width | area | area-width | width-area | largest")
      ->capture_default_str();
  app.add_option("--orientation", orientation, "any or fixed:<radians>")->capture_default_str();
  app.add_option("--input", spec.input_path, "CSV point file, one \"x,y\" per line")->required();
  app.add_option("--output", spec.output_path, "report JSON path (default: stdout)");
  app.add_option("--svg", spec.svg_path, "optional SVG figure path");
  app.add_flag("--oracle", spec.run_oracle, "also run the brute-force oracle and embed its result");
  app.add_option("--threads", spec.threads, "solver threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", spec.seed, "recorded in the report for reproducibility bookkeeping");
  app.add_option("--theta-samples", spec.theta_samples, "oracle orientation grid size")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    spec.shape = annulus::parse_shape(shape);
    spec.objective = annulus::parse_objective(objective);
    if (orientation == "any") {
      spec.any_orientation = true;
    } else if (orientation.rfind("fixed:", 0) == 0) {
      spec.any_orientation = false;
      spec.theta = std::stod(orientation.substr(6));
    } else {
      std::cerr << "input error: orientation must be \"any\" or \"fixed:<radians>\"\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  return annulus::run(spec);
}
