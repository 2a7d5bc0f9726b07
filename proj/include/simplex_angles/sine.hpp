#pragma once

// The d-dimensional sine of a vertex angle.
//
//   sin_d(A_i | A_0 ... A_d) = d^{d-1} meas_d(S)^{d-1} / ((d-1)! prod_{j != i} meas_{d-1}(F_j))
//
// evaluated at simplex vertices, on tuples of unit vectors, and through the
// recursive product over dihedral angles.

#include <cmath>
#include <stdexcept>
#include <string>

#include "simplex_angles/geometry.hpp"

namespace simplex_angles {

// Smallest singular value below which a tuple of unit vectors is treated as
// linearly dependent.
inline constexpr double kDependenceTolerance = 1e-12;

// Dimensions from which the quotient is evaluated as a sum of log-measures.
inline constexpr Index kLogSpaceDimension = 5;

template <typename Scalar>
struct SineValue {
  Scalar value{0};
  bool rank_deficient{false};
  // Amount by which the raw quotient exceeded 1 before clamping to [0, 1].
  Scalar overshoot{0};

  bool clamped() const { return overshoot > Scalar(1e-6); }
};

template <typename Scalar>
class UnitVectorTuple {
 public:
  using Matrix = MatrixX<Scalar>;

  // Columns are the vectors; the tuple is square (d vectors in R^d).
  explicit UnitVectorTuple(Matrix vectors) : vectors_(std::move(vectors)) {
    using std::abs;
    if (vectors_.rows() != vectors_.cols() || vectors_.cols() < 1)
      throw std::invalid_argument("a unit vector tuple needs d vectors in R^d");
    if (!vectors_.allFinite()) throw std::invalid_argument("unit vectors must be finite");
    for (Index j = 0; j < vectors_.cols(); ++j)
      if (abs(vectors_.col(j).norm() - Scalar(1)) > Scalar(1e-12))
        throw std::invalid_argument("vector " + std::to_string(j) + " is not of unit length");
  }

  static UnitVectorTuple normalized(Matrix directions) {
    for (Index j = 0; j < directions.cols(); ++j) {
      const Scalar n = directions.col(j).norm();
      if (!(n > Scalar(0))) throw std::invalid_argument("cannot normalize a zero vector");
      directions.col(j) /= n;
    }
    return UnitVectorTuple(std::move(directions));
  }

  Index dim() const { return vectors_.cols(); }
  const Matrix& vectors() const { return vectors_; }
  auto vector(Index j) const { return vectors_.col(j); }

 private:
  Matrix vectors_;
};

template <typename Scalar>
Scalar smallest_singular_value(const UnitVectorTuple<Scalar>& t) {
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(t.vectors());
  return svd.singularValues()(t.dim() - 1);
}

template <typename Scalar>
bool is_linearly_dependent(const UnitVectorTuple<Scalar>& t) {
  return smallest_singular_value(t) < Scalar(kDependenceTolerance);
}

namespace detail {

template <typename Scalar>
SineValue<Scalar> clamp_sine(Scalar raw) {
  SineValue<Scalar> s;
  s.overshoot = raw > Scalar(1) ? raw - Scalar(1) : Scalar(0);
  s.value = raw < Scalar(0) ? Scalar(0) : (raw > Scalar(1) ? Scalar(1) : raw);
  return s;
}

template <typename Scalar>
void require_sine_dimension(Index d) {
  if (d < 2) throw std::invalid_argument("the d-sine needs a simplex of dimension at least 2");
}

}  // namespace detail

template <typename Scalar>
SineValue<Scalar> sin_d_at_vertex(const Simplex<Scalar>& s, Index i) {
  using std::exp;
  using std::log;
  using std::lgamma;
  using std::pow;

  const Index d = s.dim();
  detail::require_sine_dimension<Scalar>(d);
  detail::check_vertex_index(i, d);

  const AffineFrame<Scalar> frame = affine_frame(s);
  if (is_degenerate(frame, d)) return {Scalar(0), true, Scalar(0)};

  Scalar raw;
  if (d >= kLogSpaceDimension) {
    Scalar l = Scalar(d - 1) * (log(Scalar(d)) + detail::log_measure_from_frame(frame, d)) - lgamma(Scalar(d));
    for (Index j = 0; j <= d; ++j)
      if (j != i) l -= log_measure(facet(s, j).simplex);
    raw = exp(l);
  } else {
    Scalar denominator = detail::factorial<Scalar>(d - 1);
    for (Index j = 0; j <= d; ++j)
      if (j != i) denominator *= measure(facet(s, j).simplex);
    raw = pow(Scalar(d) * detail::measure_from_frame(frame, d), Scalar(d - 1)) / denominator;
  }
  return detail::clamp_sine(raw);
}

// sin_d on d unit vectors: the vertex formula on conv{0, t_1, ..., t_d} at the origin,
// and exactly 0 for a dependent tuple.
template <typename Scalar>
SineValue<Scalar> sin_d_of_vectors(const UnitVectorTuple<Scalar>& t) {
  const Index d = t.dim();
  detail::require_sine_dimension<Scalar>(d);
  if (is_linearly_dependent(t)) return {Scalar(0), true, Scalar(0)};
  MatrixX<Scalar> v = MatrixX<Scalar>::Zero(d, d + 1);
  v.rightCols(d) = t.vectors();
  return sin_d_at_vertex(Simplex<Scalar>(std::move(v)), Index(0));
}

// Right-hand side of the product formula
//   sin_d(A_i | S) = sin_{d-1}(A_i | F_pivot) * prod_{j != i, pivot} sin(beta_{j, pivot}),
// with sin_1 taken as 1.
template <typename Scalar>
SineValue<Scalar> sin_d_via_product(const Simplex<Scalar>& s, Index i, Index pivot) {
  using std::sin;
  const Index d = s.dim();
  detail::require_sine_dimension<Scalar>(d);
  detail::check_vertex_index(i, d);
  detail::check_vertex_index(pivot, d);
  if (i == pivot) throw std::invalid_argument("the angle vertex and the pivot must differ");
  if (is_degenerate(s)) throw DegenerateSimplex("product formula needs a nondegenerate simplex");

  Scalar lower(1);
  if (d > 2) {
    const Facet<Scalar> f = facet(s, pivot);
    lower = sin_d_at_vertex(f.simplex, i < pivot ? i : i - 1).value;
  }
  const MatrixX<Scalar> beta = dihedral_angles(s);
  Scalar product = lower;
  for (Index j = 0; j <= d; ++j)
    if (j != i && j != pivot) product *= sin(beta(j, pivot));
  return detail::clamp_sine(product);
}

template <typename Scalar>
SineValue<Scalar> max_sine_over_vertices(const Simplex<Scalar>& s) {
  detail::require_sine_dimension<Scalar>(s.dim());
  SineValue<Scalar> best = sin_d_at_vertex(s, 0);
  for (Index i = 1; i <= s.dim(); ++i) {
    const SineValue<Scalar> v = sin_d_at_vertex(s, i);
    if (v.value > best.value) best = v;
  }
  return best;
}

}  // namespace simplex_angles
