#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simplex_angles/conditions.hpp"
#include "simplex_angles/mesh.hpp"

namespace simplex_angles {

struct AngleReport {
  Index element = 0;
  double measure = 0.0;
  double diameter = 0.0;
  double min_vertex_sine = 0.0;
  double best_edge_sine = 0.0;
  double max_dihedral = 0.0;
  double jamet_theta = 0.0;
  ConditionVerdicts<double> verdicts;
  std::optional<std::string> error;  // set when the element could not be evaluated

  bool satisfied() const { return !error && all_satisfied(verdicts); }
};

struct MeshSummary {
  Index elements = 0;
  Index violating = 0;         // elements failing some condition
  Index failed = 0;            // elements that could not be evaluated
  double min_min_vertex_sine = 0.0;
  double min_best_edge_sine = 0.0;
  double max_max_dihedral = 0.0;
  double max_jamet_theta = 0.0;
};

struct MeshAnalysis {
  std::vector<AngleReport> reports;
  MeshSummary summary;
};

AngleReport analyze_element(const Simplex<double>& s, Index element, const Thresholds& th);

// check_conditions on every element; per-element failures are recorded, not thrown.
MeshAnalysis analyze_mesh(const SimplicialMesh& mesh, const Thresholds& th);

}  // namespace simplex_angles
