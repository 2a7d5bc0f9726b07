#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace simplex_angles {

// Calls fn(indices) for every k-subset of {0, ..., n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(Eigen::Index n, Eigen::Index k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<Eigen::Index> c(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(static_cast<const std::vector<Eigen::Index>&>(c));
    Eigen::Index i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Edges of a simplex with the given number of vertices, as (a, b) with a < b in lexicographic order.
inline std::vector<std::pair<Eigen::Index, Eigen::Index>> simplex_edges(Eigen::Index num_vertices) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index a = 0; a < num_vertices; ++a)
    for (Eigen::Index b = a + 1; b < num_vertices; ++b) edges.emplace_back(a, b);
  return edges;
}

inline unsigned long long binomial(Eigen::Index n, Eigen::Index k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  for (Eigen::Index i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
  return r;
}

}  // namespace simplex_angles
