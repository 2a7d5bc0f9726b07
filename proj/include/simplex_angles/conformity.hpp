#pragma once

#include <optional>
#include <vector>

#include "simplex_angles/mesh.hpp"

namespace simplex_angles {

struct ConformityViolation {
  enum class Kind {
    FacetOvershared,  // a (d-1)-facet occurs in more than two elements
    Overlap,          // two elements meet outside the face spanned by their shared vertices
  };
  Kind kind;
  std::vector<Index> elements;  // the offending elements (a pair for Overlap)
  std::vector<Index> facet;     // sorted vertex tuple, FacetOvershared only
  double excess = 0.0;          // LP optimum, Overlap only
};

struct ConformityReport {
  bool conforming = true;
  std::vector<ConformityViolation> violations;
};

inline constexpr double kOverlapTolerance = 1e-9;

// max  sum_{i not shared} lambda_i + sum_{j not shared} mu_j
// s.t. sum lambda_i A_i = sum mu_j B_j, lambda, mu in the unit simplex.
// Zero exactly when the elements meet only inside the face spanned by their
// shared vertex indices; nullopt when they are disjoint.
std::optional<double> pair_overlap(const SimplicialMesh& mesh, Index a, Index b);

ConformityReport face_to_face_check(const SimplicialMesh& mesh);

// Standard form LP  max c.x  s.t.  A x = b, x >= 0  by two-phase tableau
// simplex with Bland's rule. nullopt when infeasible; bounded problems only.
std::optional<double> maximize_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace simplex_angles
