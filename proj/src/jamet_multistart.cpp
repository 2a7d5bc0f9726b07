#include "simplex_angles/jamet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace simplex_angles {

namespace {

std::vector<Eigen::VectorXd> sphere_sample(Index d, int count, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / count;
      pts.emplace_back(Eigen::Vector2d(std::cos(phi), std::sin(phi)));
    }
  } else if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      pts.emplace_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    while (static_cast<int>(pts.size()) < count) {
      Eigen::VectorXd g(d);
      for (Index i = 0; i < d; ++i) g(i) = normal(rng);
      const double n = g.norm();
      if (n > 1e-12) pts.emplace_back(g / n);
    }
  }
  return pts;
}

// Orthonormal basis of the tangent space of the sphere at u.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& u) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(u.size() - 1);
}

// Tangent direction that lowers every nearly active |cos| at the same unit rate.
// Falls back to the first basis vector when the active set already spans the tangent space.
Eigen::VectorXd active_set_direction(const UnitVectorTuple<double>& t, const Eigen::VectorXd& u,
                                     const Eigen::MatrixXd& basis, double step) {
  const Eigen::VectorXd c = t.vectors().transpose() * u;
  const double top = c.cwiseAbs().maxCoeff();
  std::vector<Index> active;
  for (Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i)) >= top - step) active.push_back(i);
  if (static_cast<Index>(active.size()) >= basis.cols() + 1) return basis.col(0);
  Eigen::MatrixXd a(static_cast<Index>(active.size()), basis.cols());
  Eigen::VectorXd rhs = -Eigen::VectorXd::Ones(a.rows());
  for (Index r = 0; r < a.rows(); ++r) {
    const Index i = active[static_cast<std::size_t>(r)];
    a.row(r) = (c(i) >= 0 ? 1.0 : -1.0) * (t.vectors().col(i).transpose() * basis);
  }
  const Eigen::VectorXd y = a.completeOrthogonalDecomposition().solve(rhs);
  const Eigen::VectorXd dir = basis * y;
  const double n = dir.norm();
  return n > 1e-12 ? Eigen::VectorXd(dir / n) : Eigen::VectorXd(basis.col(0));
}

}  // namespace

double jamet_objective(const UnitVectorTuple<double>& t, const Eigen::VectorXd& u) {
  const double c = (t.vectors().transpose() * u).cwiseAbs().maxCoeff();
  return std::acos(std::min(c, 1.0));
}

double jamet_theta_multistart(const UnitVectorTuple<double>& t, const MultiStartOptions& options) {
  if (is_linearly_dependent(t)) return std::numbers::pi / 2;
  const Index d = t.dim();
  if (d == 1) return 0.0;

  const std::vector<Eigen::VectorXd> sample = sphere_sample(d, options.samples, options.seed);
  std::vector<double> value(sample.size());
  for (std::size_t k = 0; k < sample.size(); ++k) value[k] = jamet_objective(t, sample[k]);

  std::vector<std::size_t> order(sample.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(options.starts), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return value[a] > value[b] || (value[a] == value[b] && a < b); });

  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> normal;

  double best = 0.0;
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd u = sample[order[s]];
    double f = value[order[s]];
    double step = options.initial_step;
    int iterations = 0;
    while (step >= options.min_step && iterations < 100000) {
      ++iterations;
      // Tangent frame plus an equal number of fresh random tangent directions,
      // so that ridges of the nonsmooth objective are eventually followed.
      Eigen::MatrixXd dirs(d, 2 * (d - 1) + 1);
      const Eigen::MatrixXd basis = tangent_basis(u);
      dirs.leftCols(d - 1) = basis;
      for (Index k = 0; k < d - 1; ++k) {
        Eigen::VectorXd g(d);
        for (Index i = 0; i < d; ++i) g(i) = normal(rng);
        g -= g.dot(u) * u;
        const double n = g.norm();
        dirs.col(d - 1 + k) = n > 1e-12 ? Eigen::VectorXd(g / n) : Eigen::VectorXd(dirs.col(k));
      }
      dirs.col(dirs.cols() - 1) = active_set_direction(t, u, basis, step);

      double best_f = f;
      Eigen::VectorXd best_u = u;
      for (Index k = 0; k < dirs.cols(); ++k) {
        for (double sign : {1.0, -1.0}) {
          const Eigen::VectorXd cand = (u + sign * step * dirs.col(k)).normalized();
          const double fc = jamet_objective(t, cand);
          if (fc > best_f) {
            best_f = fc;
            best_u = cand;
          }
        }
      }
      if (best_f > f) {
        u = best_u;
        f = best_f;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, f);
  }
  return best;
}

}  // namespace simplex_angles
