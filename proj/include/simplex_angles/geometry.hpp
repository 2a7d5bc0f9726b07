#pragma once

// Intrinsic geometry of k-simplices embedded in R^m: measures, facets,
// affine frames, outward normals and dihedral angles.
//
// Vertex sets are stored column-wise (ambient_dim x (dim + 1)). All functions
// are templated on the scalar type and accept any Eigen dense expression where
// a point set is expected.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simplex_angles {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// An edge whose residual after orthogonalization against the previous edges
// is below this fraction of its own length adds no new direction.
inline constexpr double kRankTolerance = 1e-12;

class DegenerateSimplex : public std::runtime_error {
 public:
  explicit DegenerateSimplex(const std::string& what, std::vector<Index> vertices = {})
      : std::runtime_error(what), vertices_(std::move(vertices)) {}

  // Vertex indices of the offending subsimplex, empty when it is the whole simplex.
  const std::vector<Index>& vertices() const noexcept { return vertices_; }

 private:
  std::vector<Index> vertices_;
};

template <typename Scalar>
class Simplex {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  explicit Simplex(Matrix vertices) : vertices_(std::move(vertices)) {
    if (vertices_.cols() < 1) throw std::invalid_argument("a simplex needs at least one vertex");
    if (vertices_.rows() < dim())
      throw std::invalid_argument("ambient dimension " + std::to_string(vertices_.rows()) +
                                  " is smaller than simplex dimension " + std::to_string(dim()));
    if (!vertices_.allFinite()) throw std::invalid_argument("simplex coordinates must be finite");
    for (Index i = 0; i < vertices_.cols(); ++i)
      for (Index j = i + 1; j < vertices_.cols(); ++j)
        if ((vertices_.col(i) - vertices_.col(j)).squaredNorm() == Scalar(0))
          throw std::invalid_argument("simplex vertices " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
  }

  // One initializer list per vertex.
  static Simplex from_points(std::initializer_list<std::initializer_list<Scalar>> points) {
    const Index n = static_cast<Index>(points.size());
    const Index m = n == 0 ? 0 : static_cast<Index>(points.begin()->size());
    Matrix v(m, n);
    Index j = 0;
    for (const auto& p : points) {
      if (static_cast<Index>(p.size()) != m)
        throw std::invalid_argument("all vertices must have the same number of coordinates");
      Index i = 0;
      for (Scalar x : p) v(i++, j) = x;
      ++j;
    }
    return Simplex(std::move(v));
  }

  Index dim() const { return vertices_.cols() - 1; }
  Index ambient_dim() const { return vertices_.rows(); }
  Index num_vertices() const { return vertices_.cols(); }
  const Matrix& vertices() const { return vertices_; }
  auto vertex(Index i) const { return vertices_.col(i); }

  // Subsimplex spanned by the given vertex indices, in the given order.
  Simplex subsimplex(std::span<const Index> indices) const {
    Matrix v(ambient_dim(), static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) v.col(static_cast<Index>(k)) = vertices_.col(indices[k]);
    return Simplex(std::move(v));
  }

 private:
  Matrix vertices_;
};

template <typename Scalar>
struct Facet {
  Index omitted_index;
  Simplex<Scalar> simplex;
};

// Orthonormal frame of the affine hull of a point set.
//
// Consecutive differences p_j - p_{j-1} are orthogonalized in their natural
// order (classical Gram-Schmidt with one reorthogonalization pass). The edge
// factor R satisfies  [p_1 - p_0, ..., p_{n-1} - p_{n-2}] = basis * R, and is
// upper triangular with positive diagonal when the points are affinely
// independent. Axis-aligned anisotropic inputs (orthoschemes, Kuhn simplices)
// are handled without loss of the small components.
template <typename Scalar>
struct AffineFrame {
  VectorX<Scalar> origin;
  MatrixX<Scalar> basis;        // ambient x rank
  MatrixX<Scalar> coordinates;  // rank x points
  MatrixX<Scalar> edge_factor;  // rank x (points - 1)
  Index rank = 0;
};

template <typename Derived>
AffineFrame<typename Derived::Scalar> affine_frame(const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  const Index m = points.rows();
  const Index n = points.cols();
  if (n < 1) throw std::invalid_argument("affine_frame needs at least one point");

  const Index max_rank = std::min<Index>(m, n - 1);
  Matrix q(m, max_rank);
  Matrix r = Matrix::Zero(max_rank, n - 1);
  Index rank = 0;
  for (Index j = 1; j < n; ++j) {
    const Vector v = points.col(j) - points.col(j - 1);
    Vector residual = v;
    Vector coeff = Vector::Zero(rank);
    for (int pass = 0; pass < 2 && rank > 0; ++pass) {
      const Vector c = q.leftCols(rank).transpose() * residual;
      residual -= q.leftCols(rank) * c;
      coeff += c;
    }
    r.col(j - 1).head(rank) = coeff;
    const Scalar height = residual.norm();
    if (rank < max_rank && height > Scalar(0) && height > Scalar(kRankTolerance) * v.norm()) {
      q.col(rank) = residual / height;
      r(rank, j - 1) = height;
      ++rank;
    }
  }

  AffineFrame<Scalar> frame;
  frame.origin = points.col(0);
  frame.rank = rank;
  frame.basis = q.leftCols(rank);
  frame.edge_factor = r.topRows(rank);
  frame.coordinates = Matrix::Zero(rank, n);
  for (Index j = 1; j < n; ++j)
    frame.coordinates.col(j) = frame.coordinates.col(j - 1) + frame.edge_factor.col(j - 1);
  return frame;
}

template <typename Scalar>
AffineFrame<Scalar> affine_frame(const Simplex<Scalar>& s) {
  return affine_frame(s.vertices());
}

template <typename Scalar>
bool is_degenerate(const AffineFrame<Scalar>& frame, Index dim) {
  return frame.rank < dim;
}

// True when the vertices are numerically affinely dependent (see kRankTolerance).
template <typename Scalar>
bool is_degenerate(const Simplex<Scalar>& s) {
  return is_degenerate(affine_frame(s), s.dim());
}

namespace detail {

template <typename Scalar>
Scalar factorial(Index k) {
  Scalar f(1);
  for (Index i = 2; i <= k; ++i) f *= Scalar(i);
  return f;
}

template <typename Scalar>
Scalar measure_from_frame(const AffineFrame<Scalar>& frame, Index dim) {
  if (dim == 0) return Scalar(1);
  if (is_degenerate(frame, dim)) return Scalar(0);
  Scalar p(1);
  for (Index j = 0; j < dim; ++j) p *= frame.edge_factor(j, j);
  return p / factorial<Scalar>(dim);
}

template <typename Scalar>
Scalar log_measure_from_frame(const AffineFrame<Scalar>& frame, Index dim) {
  using std::log;
  using std::lgamma;
  if (dim == 0) return Scalar(0);
  if (is_degenerate(frame, dim)) return -std::numeric_limits<Scalar>::infinity();
  Scalar l(0);
  for (Index j = 0; j < dim; ++j) l += log(frame.edge_factor(j, j));
  return l - lgamma(Scalar(dim + 1));
}

inline void check_vertex_index(Index i, Index dim) {
  if (i < 0 || i > dim)
    throw std::out_of_range("vertex index " + std::to_string(i) + " outside [0, " + std::to_string(dim) +
                            "]");
}

}  // namespace detail

// k-dimensional measure sqrt(det(E^T E)) / k!; 0 for degenerate input, 1 for a point.
template <typename Scalar>
Scalar measure(const Simplex<Scalar>& s) {
  return detail::measure_from_frame(affine_frame(s), s.dim());
}

template <typename Scalar>
Scalar log_measure(const Simplex<Scalar>& s) {
  return detail::log_measure_from_frame(affine_frame(s), s.dim());
}

// The (d-1)-simplex opposite vertex i.
template <typename Scalar>
Facet<Scalar> facet(const Simplex<Scalar>& s, Index i) {
  if (s.dim() < 1) throw std::invalid_argument("a point has no facets");
  detail::check_vertex_index(i, s.dim());
  std::vector<Index> keep;
  keep.reserve(static_cast<std::size_t>(s.dim()));
  for (Index j = 0; j <= s.dim(); ++j)
    if (j != i) keep.push_back(j);
  return {i, s.subsimplex(keep)};
}

// Gradients of the barycentric coordinates within the affine hull, one column
// per vertex, expressed in ambient coordinates.
template <typename Scalar>
MatrixX<Scalar> barycentric_gradients(const Simplex<Scalar>& s) {
  using Matrix = MatrixX<Scalar>;
  const Index d = s.dim();
  const AffineFrame<Scalar> frame = affine_frame(s);
  if (is_degenerate(frame, d)) throw DegenerateSimplex("simplex is degenerate");

  // x = p_0 + sum_j mu_j (p_j - p_{j-1}); rows of R^{-1} Q^T are grad mu_j.
  const Matrix grad_mu =
      frame.edge_factor.template triangularView<Eigen::Upper>().solve(Matrix(frame.basis.transpose()));
  Matrix grad(s.ambient_dim(), d + 1);
  grad.col(0) = -grad_mu.row(0).transpose();
  for (Index j = 1; j <= d; ++j) {
    grad.col(j) = grad_mu.row(j - 1).transpose();
    if (j < d) grad.col(j) -= grad_mu.row(j).transpose();
  }
  return grad;
}

// Unit normal of each facet F_i within the affine hull, pointing away from A_i.
template <typename Scalar>
MatrixX<Scalar> outward_normals(const Simplex<Scalar>& s) {
  if (s.dim() < 1) throw std::invalid_argument("outward normals need a simplex of dimension at least 1");
  MatrixX<Scalar> n = -barycentric_gradients(s);
  n.colwise().normalize();
  return n;
}

namespace detail {

// Angle between the unit vectors a and -b, accurate near 0 and pi.
template <typename Scalar, typename A, typename B>
Scalar angle_between_opposed(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using std::atan2;
  return Scalar(2) * atan2((a + b).norm(), (a - b).norm());
}

}  // namespace detail

// All dihedral angles beta_ij with cos(beta_ij) = -n_i . n_j, as a symmetric
// (d+1) x (d+1) matrix with zero diagonal.
template <typename Scalar>
MatrixX<Scalar> dihedral_angles(const Simplex<Scalar>& s) {
  if (s.dim() < 2) throw std::invalid_argument("dihedral angles need a simplex of dimension at least 2");
  const MatrixX<Scalar> n = outward_normals(s);
  const Index k = s.num_vertices();
  MatrixX<Scalar> angles = MatrixX<Scalar>::Zero(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j)
      angles(i, j) = angles(j, i) = detail::angle_between_opposed<Scalar>(n.col(i), n.col(j));
  return angles;
}

template <typename Scalar>
Scalar dihedral_angle(const Simplex<Scalar>& s, Index i, Index j) {
  detail::check_vertex_index(i, s.dim());
  detail::check_vertex_index(j, s.dim());
  if (i == j) throw std::invalid_argument("a dihedral angle needs two distinct facets");
  if (s.dim() < 2) throw std::invalid_argument("dihedral angles need a simplex of dimension at least 2");
  const MatrixX<Scalar> n = outward_normals(s);
  return detail::angle_between_opposed<Scalar>(n.col(i), n.col(j));
}

template <typename Scalar>
Scalar diameter(const Simplex<Scalar>& s) {
  Scalar h(0);
  for (Index i = 0; i < s.num_vertices(); ++i)
    for (Index j = i + 1; j < s.num_vertices(); ++j) h = std::max(h, (s.vertex(i) - s.vertex(j)).norm());
  return h;
}

}  // namespace simplex_angles
