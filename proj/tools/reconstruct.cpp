#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "phrecon/errors.hpp"
#include "phrecon/io.hpp"
#include "phrecon/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct the closed surfaces of a point cloud"};
  phrecon::PipelineConfig cfg;
  std::string input;
  std::string out = cfg.output_dir.string();
  app.add_option("input", input, "Point cloud (.xyz, .ply, .off, .obj)")->required()->check(CLI::ExistingFile);
  app.add_option("--ratio", cfg.target_ratio, "Face ratio kept by simplification, in (0, 1)")
      ->capture_default_str();
  app.add_option("--levels", cfg.subdiv_levels, "Loop subdivision levels")->capture_default_str();
  app.add_option("--eps", cfg.eps, "Relative RMS change that stops fitting")->capture_default_str();
  app.add_option("--max-iters", cfg.max_iters, "Fitting iteration limit")->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_flag("--export-pd", cfg.export_pd, "Also write persistence.csv");
  app.add_option("--seed", cfg.perturbation_seed, "Delaunay insertion seed")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  cfg.output_dir = out;

  try {
    cfg.validate();
    const auto cloud = phrecon::load_point_cloud(input);
    const auto result = phrecon::reconstruct(cloud, cfg);
    phrecon::export_outputs(result, cfg);
    std::printf("%zu points, %zu significant 2-cycles, %zu surfaces written to %s\n", result.input_points,
                result.significance.significant.size(), result.components.size(), cfg.output_dir.string().c_str());
    for (std::size_t k = 0; k < result.components.size(); ++k) {
      const auto& c = result.components[k];
      std::printf("  component_%zu: V=%zu F=%zu chi=%ld rms=%.6g iterations=%zu\n", k, c.mesh.vertices.size(),
                  c.mesh.faces.size(), c.mesh.euler_characteristic(), c.fit.rms_history.back(), c.fit.iterations);
    }
    for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return 0;
  } catch (const phrecon::DegenerateInput& e) {
    std::fprintf(stderr, "degenerate input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
