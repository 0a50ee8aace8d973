#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phrecon/lspia.hpp"
#include "phrecon/pd_analysis.hpp"
#include "phrecon/persistence.hpp"
#include "phrecon/point_cloud.hpp"

namespace phrecon {

struct PipelineConfig {
  double target_ratio = 0.25;
  int subdiv_levels = 2;
  double eps = 1e-3;
  int max_iters = 100;
  std::filesystem::path output_dir = ".";
  bool export_pd = false;
  /// Only affects Delaunay insertion order; results do not depend on it.
  std::uint64_t perturbation_seed = 0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct Component {
  /// The 2-dimensional pair this surface represents.
  PersistencePair pair;
  /// Subdivided, fitted surface.
  SurfaceMesh mesh;
  FitReport fit;
  /// Points used as fitting targets.
  std::size_t neighbor_count = 0;
  std::size_t volume_tetrahedra = 0;
  std::size_t removed_tetrahedra = 0;
  std::size_t cycle_faces = 0;
  std::size_t control_faces = 0;
};

/// Wall-clock seconds per stage.
struct StageTimings {
  double delaunay = 0;
  double filtration = 0;
  double persistence = 0;
  double significance = 0;
  double persistent_volume = 0;
  double cleanup = 0;
  double simplification = 0;
  double neighbors = 0;
  double fitting = 0;

  double topology() const { return delaunay + filtration + persistence + significance + persistent_volume + cleanup; }
  double surface_fitting() const { return simplification + neighbors + fitting; }
};

struct ReconstructionResult {
  std::size_t input_points = 0;
  std::size_t unique_points = 0;
  /// Components in decreasing order of persistence.
  std::vector<Component> components;
  PersistenceDiagram diagram;
  ProjectedPairs projected;
  SignificanceSplit significance;
  StageTimings timings;
  std::vector<std::string> warnings;
};

/// Alpha filtration, persistence, significance split, then for each
/// significant 2-cycle: persistent volume, non-manifold cleanup, QEM
/// simplification, neighbourhood selection and subdivision fitting.
/// Components whose cleanup empties the volume are skipped with a warning;
/// a diagram without 2-dimensional features gives zero components.
/// Throws DegenerateInput when the cloud spans no tetrahedron.
ReconstructionResult reconstruct(const PointCloud& cloud, const PipelineConfig& cfg);

/// Writes component_<k>.obj per component, report.json, and persistence.csv
/// when cfg.export_pd is set. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> export_outputs(const ReconstructionResult& result, const PipelineConfig& cfg);

}  // namespace phrecon
