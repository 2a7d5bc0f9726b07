#pragma once

// Per-simplex quantities behind the four angle conditions:
//   minimum vertex sine        (generalized minimum angle condition)
//   best edge-selection sine   (generalized maximum angle condition)
//   maximum subsimplex dihedral (d-dimensional maximum angle condition)
//   best Jamet angle           (Jamet's condition)
// and their comparison against family thresholds.

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "simplex_angles/combinatorics.hpp"
#include "simplex_angles/geometry.hpp"
#include "simplex_angles/sine.hpp"

namespace simplex_angles {

// Witness ties are broken towards the lexicographically smallest index tuple.
inline constexpr double kTieTolerance = 1e-12;

struct SelectedEdge {
  Index from;
  Index to;
  int sign = 1;  // the vector is sign * (A_to - A_from) / |A_to - A_from|
};

template <typename Scalar>
struct EdgeSelection {
  std::vector<SelectedEdge> edges;
  MatrixX<Scalar> vectors;  // d x d, one unit column per edge

  UnitVectorTuple<Scalar> tuple() const { return UnitVectorTuple<Scalar>(vectors); }
};

// Sorted vertex subset of size >= 3.
struct SubsimplexId {
  std::vector<Index> vertex_indices;
};

template <typename Scalar>
struct EdgeSineResult {
  Scalar value;
  EdgeSelection<Scalar> witness;
};

template <typename Scalar>
struct JametResult {
  Scalar value;
  EdgeSelection<Scalar> witness;
};

template <typename Scalar>
struct SubsimplexDihedral {
  Scalar value;
  SubsimplexId subsimplex;
  // Global indices of the vertices opposite the two facets of the subsimplex.
  std::pair<Index, Index> facet_pair;
};

namespace detail {

template <typename Scalar>
MatrixX<Scalar> unit_edge_vectors(const Simplex<Scalar>& s, const std::vector<std::pair<Index, Index>>& edges) {
  MatrixX<Scalar> u(s.ambient_dim(), static_cast<Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e)
    u.col(static_cast<Index>(e)) = (s.vertex(edges[e].second) - s.vertex(edges[e].first)).normalized();
  return u;
}

template <typename Scalar>
EdgeSelection<Scalar> make_selection(const std::vector<std::pair<Index, Index>>& edges, const MatrixX<Scalar>& unit,
                                     const std::vector<Index>& chosen) {
  EdgeSelection<Scalar> sel;
  sel.vectors.resize(unit.rows(), static_cast<Index>(chosen.size()));
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const auto& e = edges[static_cast<std::size_t>(chosen[k])];
    sel.edges.push_back({e.first, e.second, 1});
    sel.vectors.col(static_cast<Index>(k)) = unit.col(chosen[k]);
  }
  return sel;
}

template <typename Scalar>
void require_full_dimensional(const Simplex<Scalar>& s, const char* what) {
  if (s.dim() < 2) throw std::invalid_argument(std::string(what) + " needs a simplex of dimension at least 2");
  if (s.ambient_dim() != s.dim())
    throw std::invalid_argument(std::string(what) + " needs a d-simplex in R^d");
}

}  // namespace detail

template <typename Scalar>
Scalar min_vertex_sine(const Simplex<Scalar>& s) {
  detail::require_sine_dimension<Scalar>(s.dim());
  Scalar best = sin_d_at_vertex(s, 0).value;
  for (Index i = 1; i <= s.dim(); ++i) best = std::min(best, sin_d_at_vertex(s, i).value);
  return best;
}

// Maximum of sin_d over all d-subsets of the d(d+1)/2 edges. The d-sine of a
// vector tuple does not depend on the orientation of its vectors, so each edge
// is taken once, oriented from the lower to the higher vertex index.
template <typename Scalar>
EdgeSineResult<Scalar> best_edge_sine(const Simplex<Scalar>& s) {
  detail::require_full_dimensional(s, "best_edge_sine");
  const Index d = s.dim();
  const auto edges = simplex_edges(s.num_vertices());
  const MatrixX<Scalar> unit = detail::unit_edge_vectors(s, edges);

  Scalar best(-1);
  std::vector<Index> best_subset;
  MatrixX<Scalar> t(d, d);
  for_each_combination(static_cast<Index>(edges.size()), d, [&](const std::vector<Index>& c) {
    for (Index k = 0; k < d; ++k) t.col(k) = unit.col(c[static_cast<std::size_t>(k)]);
    const Scalar v = sin_d_of_vectors(UnitVectorTuple<Scalar>(t)).value;
    if (v > best + Scalar(kTieTolerance)) {
      best = v;
      best_subset = c;
    }
  });
  return {best, detail::make_selection(edges, unit, best_subset)};
}

// Maximum dihedral angle over every subsimplex of dimension 2..d, each measured
// in its own affine hull. For triangles the dihedral angles are the planar angles.
template <typename Scalar>
SubsimplexDihedral<Scalar> max_subsimplex_dihedral(const Simplex<Scalar>& s) {
  if (s.dim() < 2) throw std::invalid_argument("max_subsimplex_dihedral needs a simplex of dimension at least 2");
  SubsimplexDihedral<Scalar> best{Scalar(-1), {}, {0, 0}};
  for (Index k = 2; k <= s.dim(); ++k) {
    for_each_combination(s.num_vertices(), k + 1, [&](const std::vector<Index>& c) {
      const Simplex<Scalar> sub = s.subsimplex(c);
      if (is_degenerate(sub)) throw DegenerateSimplex("degenerate subsimplex", c);
      const MatrixX<Scalar> beta = dihedral_angles(sub);
      for (Index a = 0; a <= k; ++a)
        for (Index b = a + 1; b <= k; ++b)
          if (beta(a, b) > best.value + Scalar(kTieTolerance)) {
            best.value = beta(a, b);
            best.subsimplex.vertex_indices = c;
            best.facet_pair = {c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(b)]};
          }
    });
  }
  return best;
}

// Jamet's angle  theta = max_{|u| = 1} min_i angle(u, line through e_i).
//
// For independent e_i, min over unit u of max_i |u . e_i| equals 1 / max |w|
// over the parallelotope { w : |e_i . w| <= 1 }, whose maximum sits at a
// vertex w = E^{-T} s with s in {-1, 1}^d. Sign patterns are taken modulo a
// global flip. A dependent tuple gives exactly pi/2.
template <typename Scalar>
Scalar jamet_theta(const UnitVectorTuple<Scalar>& t) {
  using std::acos;
  using std::sqrt;
  const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
  if (is_linearly_dependent(t)) return half_pi;

  const Index d = t.dim();
  const MatrixX<Scalar> w = t.vectors().transpose().fullPivLu().inverse();
  VectorX<Scalar> sign = VectorX<Scalar>::Ones(d);
  Scalar best(0);
  const unsigned long long patterns = 1ull << (d - 1);
  for (unsigned long long mask = 0; mask < patterns; ++mask) {
    for (Index j = 1; j < d; ++j) sign(j) = (mask >> (j - 1)) & 1ull ? Scalar(-1) : Scalar(1);
    best = std::max(best, (w * sign).squaredNorm());
  }
  const Scalar c = Scalar(1) / sqrt(best);
  return acos(std::min(c, Scalar(1)));
}

// Minimum of Jamet's angle over all d-subsets of edges.
template <typename Scalar>
JametResult<Scalar> best_jamet_theta(const Simplex<Scalar>& s) {
  detail::require_full_dimensional(s, "best_jamet_theta");
  const Index d = s.dim();
  const auto edges = simplex_edges(s.num_vertices());
  const MatrixX<Scalar> unit = detail::unit_edge_vectors(s, edges);

  Scalar best = std::numeric_limits<Scalar>::infinity();
  std::vector<Index> best_subset;
  MatrixX<Scalar> t(d, d);
  for_each_combination(static_cast<Index>(edges.size()), d, [&](const std::vector<Index>& c) {
    for (Index k = 0; k < d; ++k) t.col(k) = unit.col(c[static_cast<std::size_t>(k)]);
    const Scalar v = jamet_theta(UnitVectorTuple<Scalar>(t));
    if (v < best - Scalar(kTieTolerance)) {
      best = v;
      best_subset = c;
    }
  });
  return {best, detail::make_selection(edges, unit, best_subset)};
}

struct Thresholds {
  double gamma0 = 3.0;    // bound on dihedral angles, in (0, pi)
  double min_sine = 1e-3; // lower bound C on sines, > 0
  double theta0 = 1.5;    // bound on Jamet's angle, in (0, pi/2)

  void validate() const {
    if (!(gamma0 > 0.0 && gamma0 < std::numbers::pi))
      throw std::invalid_argument("gamma0 must lie in (0, pi)");
    if (!(min_sine > 0.0)) throw std::invalid_argument("the sine bound C must be positive");
    if (!(theta0 > 0.0 && theta0 < std::numbers::pi / 2))
      throw std::invalid_argument("theta0 must lie in (0, pi/2)");
  }
};

enum class Condition {
  MinimumVertexSine,   // sin_d at every vertex >= C
  EdgeSine,            // some d edges with sin_d >= C
  SubsimplexDihedral,  // every subsimplex dihedral <= gamma0
  Jamet,               // some d edges with theta <= theta0
};

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::MinimumVertexSine: return "min_vertex_sine";
    case Condition::EdgeSine: return "best_edge_sine";
    case Condition::SubsimplexDihedral: return "max_dihedral";
    case Condition::Jamet: return "jamet_theta";
  }
  return "unknown";
}

struct SubsimplexWitness {
  SubsimplexId subsimplex;
  std::pair<Index, Index> facet_pair;
};

template <typename Scalar>
struct ConditionVerdict {
  Scalar quantity;
  Scalar threshold;
  bool satisfied;
  std::variant<std::monostate, EdgeSelection<Scalar>, SubsimplexWitness> witness;
};

template <typename Scalar>
using ConditionVerdicts = std::map<Condition, ConditionVerdict<Scalar>>;

template <typename Scalar>
ConditionVerdicts<Scalar> check_conditions(const Simplex<Scalar>& s, const Thresholds& th) {
  th.validate();
  ConditionVerdicts<Scalar> out;

  const Scalar c(th.min_sine);
  const Scalar mvs = min_vertex_sine(s);
  out[Condition::MinimumVertexSine] = {mvs, c, mvs >= c, std::monostate{}};

  EdgeSineResult<Scalar> es = best_edge_sine(s);
  out[Condition::EdgeSine] = {es.value, c, es.value >= c, std::move(es.witness)};

  const SubsimplexDihedral<Scalar> md = max_subsimplex_dihedral(s);
  out[Condition::SubsimplexDihedral] = {md.value, Scalar(th.gamma0), md.value <= Scalar(th.gamma0),
                                        SubsimplexWitness{md.subsimplex, md.facet_pair}};

  JametResult<Scalar> jt = best_jamet_theta(s);
  out[Condition::Jamet] = {jt.value, Scalar(th.theta0), jt.value <= Scalar(th.theta0), std::move(jt.witness)};
  return out;
}

template <typename Scalar>
bool all_satisfied(const ConditionVerdicts<Scalar>& v) {
  for (const auto& [cond, verdict] : v)
    if (!verdict.satisfied) return false;
  return true;
}

}  // namespace simplex_angles
