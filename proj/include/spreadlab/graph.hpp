#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/errors.hpp"

namespace spreadlab {

/// Bipartite graph with n_left "column" vertices and n_right "row" vertices.
/// Edges are (left, right) pairs; adjacency lists are kept in both directions.
struct BipartiteGraph {
  int n_left = 0;
  int n_right = 0;
  std::vector<std::pair<int, int>> edges;  // (u, r), sorted by (u, r) after finalize()
  std::vector<std::vector<int>> left_adj;
  std::vector<std::vector<int>> right_adj;

  BipartiteGraph() = default;
  BipartiteGraph(int nl, int nr) : n_left(nl), n_right(nr), left_adj(nl), right_adj(nr) {}

  void add_edge(int u, int r);
  /// Sorts edges and rebuilds adjacency lists; throws FileFormat on duplicates
  /// or out-of-range endpoints.
  void finalize();

  bool is_left_regular(int t) const;
  bool is_biregular(int t, int s) const;
  int max_right_degree() const;
  bool is_simple() const;
};

/// Sparse vector over [0, dim): strictly increasing indices, no stored zeros.
struct SparseVector {
  int dim = 0;
  std::vector<std::pair<int, double>> entries;

  SparseVector() = default;
  explicit SparseVector(int d) : dim(d) {}

  void set(int i, double v);  // append; indices must come in increasing order
  Eigen::VectorXd dense() const;
  double norm(double p) const;
  int nnz() const { return static_cast<int>(entries.size()); }
};

/// An (s,t)-biregular {0,+1,-1} matrix stored as a signed bipartite graph:
/// row r applied to coordinate u is sign(u,r) when (u,r) is an edge.
struct SignedBiregularMatrix {
  BipartiteGraph graph;
  int s = 0;  // right degree = row sparsity
  int t = 0;  // left degree = column sparsity
  // adjacency with signs, aligned with graph adjacency order
  std::vector<std::vector<std::pair<int, int>>> cols;  // per left u: (r, sign)
  std::vector<std::vector<std::pair<int, int>>> rows;  // per right r: (u, sign)

  int n() const { return graph.n_left; }
  int m() const { return graph.n_right; }

  /// Builds the signed adjacency from a finalized graph and per-edge signs
  /// (aligned with graph.edges). Validates biregularity.
  static SignedBiregularMatrix from_graph(const BipartiteGraph& g,
                                          const std::vector<int>& signs, int t, int s);
  /// All-(+1) signing of a t-left-regular graph; s is taken as the max right
  /// degree (rows need not be regular, e.g. for expander-derived matrices).
  static SignedBiregularMatrix unsigned_adjacency(const BipartiteGraph& g, int t);

  int sign_of(int u, int r) const;  // 0 if not an edge

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply(const SparseVector& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& z) const;
  Eigen::MatrixXd dense() const;  // m x n
};

// BIREG / BIGRAPH text formats. Round trips are bit-exact.
void write_bireg(std::ostream& os, const SignedBiregularMatrix& a);
SignedBiregularMatrix read_bireg(std::istream& is);
void write_bireg_file(const std::string& path, const SignedBiregularMatrix& a);
SignedBiregularMatrix read_bireg_file(const std::string& path);

void write_bigraph(std::ostream& os, const BipartiteGraph& g);
BipartiteGraph read_bigraph(std::istream& is);
BipartiteGraph read_bigraph_file(const std::string& path);
void write_bigraph_file(const std::string& path, const BipartiteGraph& g);

/// Deterministic pairwise summation; used wherever reproducibility across
/// runs matters more than speed.
double pairwise_sum(const double* data, std::size_t len);
double pairwise_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace spreadlab
