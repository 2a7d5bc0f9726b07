#include "simplex_angles/conformity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace simplex_angles {

namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr double kFeasibilityTolerance = 1e-10;

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) : m_(A.rows()), n_(A.cols()) {
    t_ = Eigen::MatrixXd::Zero(m_ + 1, n_ + m_ + 1);
    for (Index i = 0; i < m_; ++i) {
      const double s = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = s * A.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = s * b(i);
    }
    basis_.resize(static_cast<std::size_t>(m_));
    for (Index i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;
  }

  // Maximizes cost . x over columns [0, allowed); returns the optimum.
  double run(const Eigen::VectorXd& cost, Index allowed) {
    const Index obj = m_;
    t_.row(obj).setZero();
    t_.row(obj).head(cost.size()) = -cost.transpose();
    for (Index i = 0; i < m_; ++i) {
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) t_.row(obj) += cb * t_.row(i);
    }
    for (int iter = 0; iter < 10000; ++iter) {
      Index enter = -1;
      for (Index j = 0; j < allowed; ++j)
        if (t_(obj, j) < -kPivotTolerance) {
          enter = j;
          break;
        }
      if (enter < 0) return t_(obj, rhs());
      Index leave = -1;
      double best = 0.0;
      for (Index i = 0; i < m_; ++i) {
        if (t_(i, enter) <= kPivotTolerance) continue;
        const double ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best - kPivotTolerance ||
            (ratio <= best + kPivotTolerance &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) throw std::runtime_error("linear program is unbounded");
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

  // Pivots artificial variables out of the basis where a structural column allows it.
  void expel_artificials() {
    for (Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (Index j = 0; j < n_; ++j)
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
    }
  }

  Index structural() const { return n_; }
  Index total() const { return n_ + m_; }

 private:
  Index rhs() const { return n_ + m_; }

  void pivot(Index r, Index c) {
    t_.row(r) /= t_(r, c);
    for (Index i = 0; i <= m_; ++i)
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Index m_;
  Index n_;
  Eigen::MatrixXd t_;
  std::vector<Index> basis_;
};

struct Box {
  Eigen::VectorXd lo, hi;
};

Box bounding_box(const SimplicialMesh& mesh, const std::vector<Index>& el) {
  Box b{mesh.vertices.col(el[0]), mesh.vertices.col(el[0])};
  for (Index v : el) {
    b.lo = b.lo.cwiseMin(mesh.vertices.col(v));
    b.hi = b.hi.cwiseMax(mesh.vertices.col(v));
  }
  return b;
}

}  // namespace

std::optional<double> maximize_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw std::invalid_argument("maximize_lp: inconsistent sizes");
  Tableau t(A, b);
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(t.total());
  phase1.tail(t.total() - t.structural()).setConstant(-1.0);
  if (t.run(phase1, t.total()) < -kFeasibilityTolerance) return std::nullopt;
  t.expel_artificials();
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(t.total());
  phase2.head(c.size()) = c;
  return t.run(phase2, t.structural());
}

std::optional<double> pair_overlap(const SimplicialMesh& mesh, Index a, Index b) {
  const auto& ea = mesh.elements.at(static_cast<std::size_t>(a));
  const auto& eb = mesh.elements.at(static_cast<std::size_t>(b));
  const Index na = static_cast<Index>(ea.size());
  const Index nb = static_cast<Index>(eb.size());
  const Index d = mesh.dim;

  // Centre and scale so that the tolerances are relative to the pair's size.
  Box box = bounding_box(mesh, ea);
  const Box bb = bounding_box(mesh, eb);
  box.lo = box.lo.cwiseMin(bb.lo);
  box.hi = box.hi.cwiseMax(bb.hi);
  const Eigen::VectorXd centre = (box.lo + box.hi) / 2;
  const double scale = std::max((box.hi - box.lo).maxCoeff(), 1e-300);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d + 2, na + nb);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 2);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(na + nb);
  for (Index i = 0; i < na; ++i) {
    A.col(i).head(d) = (mesh.vertices.col(ea[static_cast<std::size_t>(i)]) - centre) / scale;
    A(d, i) = 1.0;
    if (std::find(eb.begin(), eb.end(), ea[static_cast<std::size_t>(i)]) == eb.end()) c(i) = 1.0;
  }
  for (Index j = 0; j < nb; ++j) {
    A.col(na + j).head(d) = -(mesh.vertices.col(eb[static_cast<std::size_t>(j)]) - centre) / scale;
    A(d + 1, na + j) = 1.0;
    if (std::find(ea.begin(), ea.end(), eb[static_cast<std::size_t>(j)]) == ea.end()) c(na + j) = 1.0;
  }
  rhs(d) = rhs(d + 1) = 1.0;
  return maximize_lp(A, rhs, c);
}

ConformityReport face_to_face_check(const SimplicialMesh& mesh) {
  ConformityReport report;
  const Index m = mesh.num_elements();

  std::map<std::vector<Index>, std::vector<Index>> owners;
  for (Index e = 0; e < m; ++e) {
    std::vector<Index> el = mesh.elements[static_cast<std::size_t>(e)];
    std::sort(el.begin(), el.end());
    for (Index skip = 0; skip < static_cast<Index>(el.size()); ++skip) {
      std::vector<Index> f;
      for (Index k = 0; k < static_cast<Index>(el.size()); ++k)
        if (k != skip) f.push_back(el[static_cast<std::size_t>(k)]);
      owners[f].push_back(e);
    }
  }
  for (const auto& [f, els] : owners)
    if (els.size() > 2) report.violations.push_back({ConformityViolation::Kind::FacetOvershared, els, f, 0.0});

  // Sweep over x_1 so that only pairs with overlapping boxes reach the LP.
  std::vector<Box> boxes;
  boxes.reserve(static_cast<std::size_t>(m));
  for (Index e = 0; e < m; ++e) boxes.push_back(bounding_box(mesh, mesh.elements[static_cast<std::size_t>(e)]));
  std::vector<Index> order(static_cast<std::size_t>(m));
  for (Index e = 0; e < m; ++e) order[static_cast<std::size_t>(e)] = e;
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    return boxes[static_cast<std::size_t>(x)].lo(0) < boxes[static_cast<std::size_t>(y)].lo(0) ||
           (boxes[static_cast<std::size_t>(x)].lo(0) == boxes[static_cast<std::size_t>(y)].lo(0) && x < y);
  });

  std::vector<std::pair<Index, Index>> candidates;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Box& bp = boxes[static_cast<std::size_t>(order[p])];
    const double slack = 1e-12 * std::max(1.0, (bp.hi - bp.lo).maxCoeff());
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const Box& bq = boxes[static_cast<std::size_t>(order[q])];
      if (bq.lo(0) > bp.hi(0) + slack) break;
      if (((bq.lo.array() - slack) <= bp.hi.array()).all() && ((bp.lo.array() - slack) <= bq.hi.array()).all())
        candidates.emplace_back(std::min(order[p], order[q]), std::max(order[p], order[q]));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [a, b] : candidates) {
    const auto excess = pair_overlap(mesh, a, b);
    if (excess && *excess > kOverlapTolerance)
      report.violations.push_back({ConformityViolation::Kind::Overlap, {a, b}, {}, *excess});
  }

  report.conforming = report.violations.empty();
  return report;
}

}  // namespace simplex_angles
