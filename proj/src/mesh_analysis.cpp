#include "simplex_angles/mesh_analysis.hpp"

#include <limits>

namespace simplex_angles {

AngleReport analyze_element(const Simplex<double>& s, Index element, const Thresholds& th) {
  AngleReport r;
  r.element = element;
  r.measure = measure(s);
  r.diameter = diameter(s);
  try {
    r.verdicts = check_conditions(s, th);
    r.min_vertex_sine = r.verdicts.at(Condition::MinimumVertexSine).quantity;
    r.best_edge_sine = r.verdicts.at(Condition::EdgeSine).quantity;
    r.max_dihedral = r.verdicts.at(Condition::SubsimplexDihedral).quantity;
    r.jamet_theta = r.verdicts.at(Condition::Jamet).quantity;
  } catch (const DegenerateSimplex& e) {
    r.error = e.what();
  }
  return r;
}

MeshAnalysis analyze_mesh(const SimplicialMesh& mesh, const Thresholds& th) {
  th.validate();
  MeshAnalysis out;
  MeshSummary& sum = out.summary;
  sum.elements = mesh.num_elements();
  sum.min_min_vertex_sine = std::numeric_limits<double>::infinity();
  sum.min_best_edge_sine = std::numeric_limits<double>::infinity();
  sum.max_max_dihedral = -std::numeric_limits<double>::infinity();
  sum.max_jamet_theta = -std::numeric_limits<double>::infinity();

  out.reports.reserve(mesh.elements.size());
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    AngleReport r = analyze_element(mesh.element(e), e, th);
    if (r.error) {
      ++sum.failed;
    } else {
      if (!r.satisfied()) ++sum.violating;
      sum.min_min_vertex_sine = std::min(sum.min_min_vertex_sine, r.min_vertex_sine);
      sum.min_best_edge_sine = std::min(sum.min_best_edge_sine, r.best_edge_sine);
      sum.max_max_dihedral = std::max(sum.max_max_dihedral, r.max_dihedral);
      sum.max_jamet_theta = std::max(sum.max_jamet_theta, r.jamet_theta);
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

}  // namespace simplex_angles
