#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <Eigen/Dense>
#include <random>
#include <utility>
#include <vector>

#include "spreadlab/graph.hpp"

namespace testhelp {

using spreadlab::BipartiteGraph;
using spreadlab::SignedBiregularMatrix;

/// Exact (t,s)-biregular tree of left-depth ell rooted at left vertex 0:
/// internal right vertices have degree s, internal left vertices degree t,
/// leaf right vertices degree 1. Matches the branching structure that
/// build_ball validates at radius ell.
inline BipartiteGraph tree_graph(int t, int s, int ell) {
  std::vector<std::pair<int, int>> edges;
  int nl = 1, nr = 0;
  std::vector<int> lefts{0};  // current left level
  for (int k = 0; k <= ell; ++k) {
    const int branches = (k == 0) ? t : t - 1;
    std::vector<int> next_lefts;
    for (int u : lefts) {
      for (int b = 0; b < branches; ++b) {
        const int r = nr++;
        edges.emplace_back(u, r);
        if (k < ell) {
          for (int c = 0; c < s - 1; ++c) {
            const int child = nl++;
            edges.emplace_back(child, r);
            next_lefts.push_back(child);
          }
        }
      }
    }
    lefts = std::move(next_lefts);
  }
  BipartiteGraph g(nl, nr);
  for (const auto& [u, r] : edges) g.add_edge(u, r);
  g.finalize();
  return g;
}

/// Random +/-1 signing of a finalized t-left-regular graph.
inline SignedBiregularMatrix signed_matrix(const BipartiteGraph& g, int t, int s,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> signs(g.edges.size());
  for (auto& e : signs) e = (rng() & 1) ? 1 : -1;
  return SignedBiregularMatrix::from_graph(g, signs, t, s);
}

/// Tree matrix with random signs; s passed as the max right degree is wrong
/// for trees (leaf rights have degree 1), so the signed adjacency is built
/// directly without the biregularity check on rows.
inline SignedBiregularMatrix tree_matrix(int t, int s, int ell, std::uint64_t seed) {
  const BipartiteGraph g = tree_graph(t, s, ell);
  std::mt19937_64 rng(seed);
  SignedBiregularMatrix a;
  a.graph = g;
  a.s = s;
  a.t = t;
  a.cols.resize(g.n_left);
  a.rows.resize(g.n_right);
  for (const auto& [u, r] : g.edges) {
    const int sg = (rng() & 1) ? 1 : -1;
    a.cols[u].emplace_back(r, sg);
    a.rows[r].emplace_back(u, sg);
  }
  return a;
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = gauss(rng);
  return x;
}

/// n disjoint stars: left i owns rights t*i .. t*i+t-1. A (gamma, 0) unique
/// expander for every gamma.
inline BipartiteGraph star_graph(int n, int t) {
  BipartiteGraph g(n, n * t);
  for (int u = 0; u < n; ++u)
    for (int j = 0; j < t; ++j) g.add_edge(u, u * t + j);
  g.finalize();
  return g;
}

/// Disjoint stars except that lefts 0 and 1 share their first right vertex;
/// the worst unique-expansion mu over small sets is 1/t (from the pair {0,1}).
inline BipartiteGraph shared_right_graph(int n, int t) {
  BipartiteGraph g(n, n * t - 1);
  g.add_edge(0, 0);
  g.add_edge(1, 0);
  int next = 1;
  for (int j = 1; j < t; ++j) g.add_edge(0, next++);
  for (int j = 1; j < t; ++j) g.add_edge(1, next++);
  for (int u = 2; u < n; ++u)
    for (int j = 0; j < t; ++j) g.add_edge(u, next++);
  g.finalize();
  return g;
}

}  // namespace testhelp
