#include "simplex_angles/identities.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "simplex_angles/families.hpp"
#include "simplex_angles/sine.hpp"

namespace simplex_angles {

namespace {

double classical_sine(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return std::abs(u.x() * v.y() - u.y() * v.x()) / (u.norm() * v.norm());
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(Index dim, int trials, std::uint64_t seed) {
  if (dim < 2 || dim > 6) throw std::invalid_argument("identity suite supports 2 <= d <= 6");
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  IdentityResult product{"product_formula", 0.0, 1e-9, 0};
  IdentityResult planar{"planar_reduction", 0.0, 1e-12, 0};
  IdentityResult range{"range_bound", 0.0, 1e-12, 0};
  IdentityResult dependence{"dependence_zero", 0.0, 0.0, 0};
  IdentityResult normalization{"normalization", 0.0, 1e-10, 0};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  auto note_range = [&](const SineValue<double>& v) {
    range.max_violation = std::max(range.max_violation, v.overshoot);
    ++range.cases;
  };

  for (int t = 0; t < trials; ++t) {
    const Simplex<double> s = random_simplex(dim, rng);

    for (Index i = 0; i <= dim; ++i) {
      const SineValue<double> direct = sin_d_at_vertex(s, i);
      note_range(direct);
      for (Index p = 0; p <= dim; ++p) {
        if (p == i) continue;
        const double via = sin_d_via_product(s, i, p).value;
        product.max_violation =
            std::max(product.max_violation, std::abs(direct.value - via) / std::max(direct.value, 1e-300));
        ++product.cases;
      }
    }

    const Simplex<double> tri = random_simplex(2, rng);
    for (Index i = 0; i < 3; ++i) {
      const Eigen::Vector2d a = tri.vertex(i);
      const Eigen::Vector2d u = tri.vertex((i + 1) % 3) - a;
      const Eigen::Vector2d v = tri.vertex((i + 2) % 3) - a;
      const SineValue<double> s2 = sin_d_at_vertex(tri, i);
      note_range(s2);
      planar.max_violation = std::max(planar.max_violation, std::abs(s2.value - classical_sine(u, v)));
      ++planar.cases;
    }

    // Edges from A_0, then the last one replaced by a combination of the others.
    Eigen::MatrixXd edges = s.vertices().rightCols(dim).colwise() - s.vertex(0);
    Eigen::MatrixXd dep = edges;
    if (t % 2 == 0) {
      dep.col(dim - 1) = dep.col(0);
    } else {
      dep.col(dim - 1).setZero();
      for (Index j = 0; j + 1 < dim; ++j) dep.col(dim - 1) += coeff(rng) * edges.col(j);
      if (dep.col(dim - 1).norm() < 1e-8) dep.col(dim - 1) = edges.col(0);
    }
    const SineValue<double> zero = sin_d_of_vectors(UnitVectorTuple<double>::normalized(dep));
    dependence.max_violation = std::max(dependence.max_violation, zero.value + (zero.rank_deficient ? 0.0 : 1.0));
    ++dependence.cases;

    Eigen::MatrixXd stretched(dim, dim + 1);
    stretched.col(0) = s.vertex(0);
    for (Index j = 1; j <= dim; ++j) stretched.col(j) = s.vertex(0) + scale(rng) * edges.col(j - 1);
    const SineValue<double> before = sin_d_at_vertex(s, 0);
    const SineValue<double> after = sin_d_at_vertex(Simplex<double>(stretched), 0);
    const SineValue<double> unit = sin_d_of_vectors(UnitVectorTuple<double>::normalized(edges));
    note_range(after);
    note_range(unit);
    normalization.max_violation = std::max(
        {normalization.max_violation, std::abs(before.value - after.value), std::abs(before.value - unit.value)});
    ++normalization.cases;
  }

  return {product, planar, range, dependence, normalization};
}

}  // namespace simplex_angles
