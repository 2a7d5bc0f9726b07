#pragma once

// Linear Lagrange interpolation on a d-simplex and the empirical interpolation
// constant  ||v - pi_S v||_{1,inf} / (h_S |v|_{2,inf}).
//
// Norms: ||w||_{1,inf} = max(sup |w|, sup max_k |d_k w|) and
// |v|_{2,inf} = sup max_{k,l} |d_k d_l v|, with sups taken over a barycentric
// lattice of the simplex.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simplex_angles/geometry.hpp"

namespace simplex_angles {

struct AffineFunction {
  Eigen::VectorXd gradient;
  double offset = 0.0;

  double operator()(const Eigen::VectorXd& x) const { return gradient.dot(x) + offset; }
};

struct TestFunction {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  double hessian_sup = 0.0;

  // v(x) = x^T H x / 2 + b^T x + c, with |v|_{2,inf} = max |H_kl|.
  static TestFunction quadratic(std::string name, Eigen::MatrixXd hessian, Eigen::VectorXd linear, double constant);
  static TestFunction affine(std::string name, Eigen::VectorXd gradient, double offset);
};

// The monomials x_k^2 and x_k x_l (k < l) in R^d.
std::vector<TestFunction> default_quadratic_suite(Index d);

// Unique affine function taking the given values at the vertices of a
// nondegenerate d-simplex in R^d.
AffineFunction lagrange_interpolant(const Simplex<double>& s, const Eigen::VectorXd& vertex_values);

struct InterpolationError {
  double sup_value_err = 0.0;
  double sup_gradient_err = 0.0;

  double norm() const { return std::max(sup_value_err, sup_gradient_err); }
};

// Points sum_i (alpha_i / order) A_i for all multi-indices |alpha| = order, one column each.
Eigen::MatrixXd barycentric_lattice(const Simplex<double>& s, int order);

InterpolationError interpolation_error(const Simplex<double>& s, const TestFunction& v, int lattice_order = 20);

// max over the suite of ||v - pi_S v||_{1,inf} / (h_S |v|_{2,inf}). Members with
// a vanishing Hessian contribute 0 when reproduced exactly (error <= 1e-12).
double interpolation_ratio(const Simplex<double>& s, std::span<const TestFunction> suite, int lattice_order = 20);

}  // namespace simplex_angles
