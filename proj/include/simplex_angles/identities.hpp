#pragma once

// Randomized checks of the d-sine identities and properties.

#include <cstdint>
#include <string>
#include <vector>

#include "simplex_angles/geometry.hpp"

namespace simplex_angles {

struct IdentityResult {
  std::string name;
  double max_violation = 0.0;
  double tolerance = 0.0;
  long long cases = 0;

  bool passed() const { return max_violation <= tolerance; }
};

//   product_formula        relative gap between the vertex formula and the dihedral product, all (i, pivot)
//   planar_reduction       |sin_2 - classical sine| on random triangles
//   range_bound            excess of sin_d over 1 (or below 0)
//   dependence_zero        |sin_d| on dependent tuples, and the unset rank flag counted as 1
//   normalization          change of sin_d at A_0 when the edges from A_0 are rescaled
std::vector<IdentityResult> run_identity_suite(Index dim, int trials, std::uint64_t seed);

}  // namespace simplex_angles
