#pragma once

#include <cstdint>

#include "simplex_angles/sine.hpp"

namespace simplex_angles {

struct MultiStartOptions {
  int samples = 4096;
  int starts = 16;
  double initial_step = 0.1;
  double min_step = 1e-10;
  std::uint64_t seed = 0x5eed;
};

// Jamet's angle by direct maximization of min_i angle(u, line e_i) over the
// unit sphere: a deterministic quasi-uniform sample (a circle grid for d = 2, a
// Fibonacci lattice for d = 3, seeded Gaussian directions above), the best
// `starts` samples refined by projected pattern search until the step falls
// below `min_step`. Rank-deficient tuples return pi/2.
double jamet_theta_multistart(const UnitVectorTuple<double>& t, const MultiStartOptions& options = {});

// The objective min_i angle(u, line e_i) for a unit direction u.
double jamet_objective(const UnitVectorTuple<double>& t, const Eigen::VectorXd& u);

}  // namespace simplex_angles
