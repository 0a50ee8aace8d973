#include "phrecon/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "phrecon/cycles.hpp"
#include "phrecon/errors.hpp"
#include "phrecon/filtration.hpp"
#include "phrecon/io.hpp"
#include "phrecon/mesh.hpp"
#include "phrecon/qem.hpp"

namespace phrecon {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() { sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

std::string format17(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) throw std::invalid_argument("target ratio must lie in (0, 1)");
  if (subdiv_levels < 0) throw std::invalid_argument("subdivision levels must be non-negative");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (max_iters < 1) throw std::invalid_argument("max iterations must be at least 1");
}

ReconstructionResult reconstruct(const PointCloud& cloud, const PipelineConfig& cfg) {
  cfg.validate();
  if (cloud.size() == 0) throw DegenerateInput("empty point cloud");
  ReconstructionResult result;
  result.input_points = cloud.size();
  auto& t = result.timings;

  DelaunaySkeleton skeleton;
  {
    Stopwatch w(t.delaunay);
    skeleton = delaunay3(cloud, cfg.perturbation_seed);
  }
  result.unique_points = skeleton.cloud.size();
  if (result.unique_points < result.input_points)
    result.warnings.push_back(std::to_string(result.input_points - result.unique_points) + " duplicate points merged");

  Filtration f;
  {
    Stopwatch w(t.filtration);
    f = alpha_values(skeleton);
  }
  {
    Stopwatch w(t.persistence);
    result.diagram = compute_persistence(f);
  }

  std::vector<std::size_t> order;
  {
    Stopwatch w(t.significance);
    try {
      result.projected = project_persistence(result.diagram, 2);
    } catch (const EmptyDiagram& e) {
      result.warnings.push_back(std::string("no 2-dimensional features: ") + e.what());
      return result;
    }
    result.significance = split_significant(result.projected.persistence);
    if (result.significance.warning) result.warnings.push_back(*result.significance.warning);
    order = result.significance.significant;
    const auto& pers = result.projected.persistence;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pers[a] > pers[b]; });
  }

  for (std::size_t idx : order) {
    const PersistencePair& pair = result.projected.pairs[idx];
    const std::string tag = "component for pair (" + format17(pair.birth) + ", " + format17(pair.death) + ")";
    Component c;
    c.pair = pair;
    PersistentVolume pv;
    {
      Stopwatch w(t.persistent_volume);
      pv = persistent_volume(f, pair);
    }
    c.volume_tetrahedra = pv.volume.size();
    CleanedCycle cleaned;
    try {
      Stopwatch w(t.cleanup);
      cleaned = clean_cycle(pv, f);
    } catch (const EmptiedVolume& e) {
      result.warnings.push_back(tag + " skipped: " + e.what());
      continue;
    }
    c.removed_tetrahedra = cleaned.removed_tetrahedra;
    c.cycle_faces = cleaned.surface.mesh.faces.size();

    QemResult reduced;
    {
      Stopwatch w(t.simplification);
      reduced = qem_simplify(cleaned.surface.mesh, cfg.target_ratio);
    }
    if (reduced.warning) result.warnings.push_back(tag + ": " + *reduced.warning);
    c.control_faces = reduced.mesh.faces.size();

    PointCloud targets;
    {
      Stopwatch w(t.neighbors);
      targets = neighbor_subset(f.cloud(), cleaned.surface.mesh.vertices);
    }
    c.neighbor_count = targets.size();
    {
      Stopwatch w(t.fitting);
      c.fit = fit(reduced.mesh, targets, cfg.subdiv_levels, cfg.eps, cfg.max_iters);
    }
    if (!c.fit.converged)
      result.warnings.push_back(tag + ": fitting stopped after " + std::to_string(c.fit.iterations) +
                                " iterations without meeting the stopping criterion");
    if (c.fit.frozen > 0)
      result.warnings.push_back(tag + ": " + std::to_string(c.fit.frozen) + " control vertices received no residuals");
    c.mesh = c.fit.refined;
    result.components.push_back(std::move(c));
  }
  return result;
}

std::vector<std::filesystem::path> export_outputs(const ReconstructionResult& result, const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  nlohmann::ordered_json components = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < result.components.size(); ++k) {
    const Component& c = result.components[k];
    const fs::path file = cfg.output_dir / ("component_" + std::to_string(k) + ".obj");
    write_obj(file, c.mesh);
    written.push_back(file);
    components.push_back({
        {"mesh", file.filename().string()},
        {"birth", c.pair.birth},
        {"death", c.pair.death},
        {"pos_simplex", c.pair.pos_simplex},
        {"neg_simplex", c.pair.neg_simplex},
        {"volume_tetrahedra", c.volume_tetrahedra},
        {"removed_tetrahedra", c.removed_tetrahedra},
        {"cycle_faces", c.cycle_faces},
        {"control_faces", c.control_faces},
        {"neighbor_count", c.neighbor_count},
        {"vertices", c.mesh.vertices.size()},
        {"faces", c.mesh.faces.size()},
        {"euler_characteristic", c.mesh.euler_characteristic()},
        {"closed", c.mesh.closed},
        {"manifold", c.mesh.manifold},
        {"iterations", c.fit.iterations},
        {"converged", c.fit.converged},
        {"final_rms", c.fit.rms_history.empty() ? 0.0 : c.fit.rms_history.back()},
        {"rms_history", c.fit.rms_history},
    });
  }

  if (cfg.export_pd) {
    std::set<Id> significant;
    for (std::size_t i : result.significance.significant) significant.insert(result.projected.pairs[i].pos_simplex);
    const fs::path file = cfg.output_dir / "persistence.csv";
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file.string());
    out << "dim,birth,death,pos_simplex,neg_simplex,significant\n";
    for (const auto& p : result.diagram.pairs) {
      if (!p.essential() && !(p.death > p.birth)) continue;
      out << p.dim << ',' << format17(p.birth) << ',' << format17(p.death) << ',' << p.pos_simplex << ','
          << (p.essential() ? -1 : p.neg_simplex) << ',' << (p.dim == 2 && significant.count(p.pos_simplex) ? 1 : 0)
          << '\n';
    }
    if (!out.flush()) throw IoError("failed writing " + file.string());
    written.push_back(file);
  }

  const auto& t = result.timings;
  nlohmann::ordered_json report = {
      {"config",
       {{"target_ratio", cfg.target_ratio},
        {"subdiv_levels", cfg.subdiv_levels},
        {"eps", cfg.eps},
        {"max_iters", cfg.max_iters},
        {"output_dir", cfg.output_dir.string()},
        {"export_pd", cfg.export_pd},
        {"perturbation_seed", cfg.perturbation_seed}}},
      {"filtration_parameter", "radius"},
      {"input_points", result.input_points},
      {"unique_points", result.unique_points},
      {"significant_points", result.significance.significant.size()},
      {"significance_threshold", result.significance.threshold},
      {"components", components},
      {"timings_seconds",
       {{"topology", t.topology()},
        {"fitting", t.surface_fitting()},
        {"stages",
         {{"delaunay", t.delaunay},
          {"filtration", t.filtration},
          {"persistence", t.persistence},
          {"significance", t.significance},
          {"persistent_volume", t.persistent_volume},
          {"cleanup", t.cleanup},
          {"simplification", t.simplification},
          {"neighbors", t.neighbors},
          {"fitting", t.fitting}}}}},
      {"warnings", result.warnings},
  };
  const fs::path file = cfg.output_dir / "report.json";
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << report.dump(2) << '\n';
  if (!out.flush()) throw IoError("failed writing " + file.string());
  written.push_back(file);
  return written;
}

}  // namespace phrecon
