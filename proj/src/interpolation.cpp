#include "simplex_angles/interpolation.hpp"

#include <limits>
#include <stdexcept>

namespace simplex_angles {

TestFunction TestFunction::quadratic(std::string name, Eigen::MatrixXd hessian, Eigen::VectorXd linear,
                                     double constant) {
  if (hessian.rows() != hessian.cols() || hessian.rows() != linear.size())
    throw std::invalid_argument("quadratic test function: inconsistent sizes");
  TestFunction f;
  f.name = std::move(name);
  f.hessian_sup = hessian.cwiseAbs().maxCoeff();
  f.value = [hessian, linear, constant](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(hessian * x) + linear.dot(x) + constant;
  };
  f.gradient = [hessian, linear](const Eigen::VectorXd& x) -> Eigen::VectorXd { return hessian * x + linear; };
  return f;
}

TestFunction TestFunction::affine(std::string name, Eigen::VectorXd gradient, double offset) {
  const Index d = gradient.size();
  return quadratic(std::move(name), Eigen::MatrixXd::Zero(d, d), std::move(gradient), offset);
}

std::vector<TestFunction> default_quadratic_suite(Index d) {
  std::vector<TestFunction> suite;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
  for (Index k = 0; k < d; ++k) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    h(k, k) = 2.0;
    suite.push_back(TestFunction::quadratic("x" + std::to_string(k + 1) + "^2", h, zero, 0.0));
  }
  for (Index k = 0; k < d; ++k)
    for (Index l = k + 1; l < d; ++l) {
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
      h(k, l) = h(l, k) = 1.0;
      suite.push_back(
          TestFunction::quadratic("x" + std::to_string(k + 1) + "*x" + std::to_string(l + 1), h, zero, 0.0));
    }
  return suite;
}

AffineFunction lagrange_interpolant(const Simplex<double>& s, const Eigen::VectorXd& vertex_values) {
  const Index d = s.dim();
  if (s.ambient_dim() != d) throw std::invalid_argument("interpolation needs a d-simplex in R^d");
  if (vertex_values.size() != d + 1) throw std::invalid_argument("need one value per vertex");
  if (is_degenerate(s)) throw DegenerateSimplex("cannot interpolate on a degenerate simplex");

  // Rows [A_i^T 1]; unknowns [gradient; offset].
  Eigen::MatrixXd m(d + 1, d + 1);
  m.leftCols(d) = s.vertices().transpose();
  m.col(d).setOnes();
  const Eigen::VectorXd sol = m.partialPivLu().solve(vertex_values);
  return {sol.head(d), sol(d)};
}

Eigen::MatrixXd barycentric_lattice(const Simplex<double>& s, int order) {
  if (order < 1) throw std::invalid_argument("lattice order must be positive");
  const Index n = s.num_vertices();
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXi alpha = Eigen::VectorXi::Zero(n);

  // Enumerate compositions of `order` into n nonnegative parts.
  auto rec = [&](auto&& self, Index pos, int remaining) -> void {
    if (pos == n - 1) {
      alpha(pos) = remaining;
      points.push_back(s.vertices() * (alpha.cast<double>() / order));
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      alpha(pos) = a;
      self(self, pos + 1, remaining - a);
    }
  };
  rec(rec, 0, order);

  Eigen::MatrixXd out(s.ambient_dim(), static_cast<Index>(points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) out.col(static_cast<Index>(k)) = points[k];
  return out;
}

namespace {

InterpolationError error_on_lattice(const Simplex<double>& s, const TestFunction& v, const Eigen::MatrixXd& lattice) {
  Eigen::VectorXd values(s.num_vertices());
  for (Index i = 0; i < s.num_vertices(); ++i) values(i) = v.value(s.vertex(i));
  const AffineFunction pi = lagrange_interpolant(s, values);

  InterpolationError err;
  for (Index k = 0; k < lattice.cols(); ++k) {
    const Eigen::VectorXd x = lattice.col(k);
    err.sup_value_err = std::max(err.sup_value_err, std::abs(v.value(x) - pi(x)));
    err.sup_gradient_err = std::max(err.sup_gradient_err, (v.gradient(x) - pi.gradient).cwiseAbs().maxCoeff());
  }
  return err;
}

}  // namespace

InterpolationError interpolation_error(const Simplex<double>& s, const TestFunction& v, int lattice_order) {
  if (lattice_order < 2) throw std::invalid_argument("lattice order must be at least 2");
  return error_on_lattice(s, v, barycentric_lattice(s, lattice_order));
}

double interpolation_ratio(const Simplex<double>& s, std::span<const TestFunction> suite, int lattice_order) {
  if (suite.empty()) throw std::invalid_argument("interpolation_ratio needs a nonempty suite");
  if (lattice_order < 2) throw std::invalid_argument("lattice order must be at least 2");
  const Eigen::MatrixXd lattice = barycentric_lattice(s, lattice_order);
  const double h = diameter(s);
  double ratio = 0.0;
  for (const TestFunction& v : suite) {
    const double e = error_on_lattice(s, v, lattice).norm();
    if (v.hessian_sup > 0.0)
      ratio = std::max(ratio, e / (h * v.hessian_sup));
    else if (e > 1e-12)
      ratio = std::numeric_limits<double>::infinity();
  }
  return ratio;
}

}  // namespace simplex_angles
