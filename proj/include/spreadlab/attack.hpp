#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/graph.hpp"
#include "spreadlab/graph_analysis.hpp"

namespace spreadlab {

/// The geometrically decaying kernel-like vector supported on an acyclic
/// ball: +/-1 at the root, magnitude (s-1)^{-k} at depth 2k, signed so that
/// Ax vanishes on every internal right vertex of the ball.
struct TreeVector {
  SparseVector x;
  TreeBall ball;
  int s = 0, t = 0;

  /// ||Ax||_p^p = t (t-1)^ell (s-1)^{(1-p) ell}, exact closed form.
  double predicted_ax_norm_p(double p) const;
  /// ||x||_p^p = 1 + sum_k t (t-1)^{k-1} (s-1)^{(1-p)k}.
  double predicted_x_norm_p(double p) const;
};

/// Builds the tree vector on a validated ball. Internal cancellation is
/// checked in exact integer arithmetic at scale (s-1)^ell.
TreeVector build_tree_vector(const SignedBiregularMatrix& a, const TreeBall& ball);

struct ProjectionResult {
  Eigen::VectorXd y;
  double gap = 0.0;  // ||x - y||_2
};

/// Orthogonal projection onto ker(A): y = x - A^T (AA^T)^{-1} A x, via CG on
/// AA^T with a dense fallback for n <= 512.
ProjectionResult project_to_kernel(const SignedBiregularMatrix& a, const Eigen::VectorXd& x,
                                   double tol = 1e-10);

struct CompressibleWitness {
  Eigen::VectorXd y;
  int k = 0;
  double epsilon = 0.0;
  double p = 2.0;
  double residual = 0.0;  // ||Ay||_2 / ||y||_2
  double distortion_lower_bound = 0.0;
  int ell = 0;
  SparseVector tree_x;  // the pre-projection sparse vector

  std::string to_json(int n, int m, int s, int t, std::uint64_t seed) const;
};

/// Full refutation chain: acyclic ball -> tree vector -> kernel projection.
/// When candidate_budget != 1, up to that many roots achieving the maximal
/// acyclic radius are projected and the smallest-epsilon witness is returned
/// (0 means the scale-aware default max(16, n/64)).
CompressibleWitness attack(const SignedBiregularMatrix& a, int max_radius, double tol = 1e-10,
                           int candidate_budget = 1);

struct LpRatioWitness {
  TreeVector tv;
  double ratio = 0.0;          // ||Ax||_p / ||x||_p measured via apply()
  double ratio_formula = 0.0;  // closed-form counterpart
  bool converse_regime = false;  // (s-1)^{2-p} <= 1/((1+eps) alpha)
};

LpRatioWitness lp_ratio_witness(const SignedBiregularMatrix& a, const TreeBall& ball, double p,
                                double eps);

/// Streaming tree-vector check on the implicit exact (t,s)-biregular tree of
/// depth 2*ell+1 with pseudorandom signs: evaluates the sparse product Ax
/// edge by edge in integer arithmetic at scale (s-1)^ell, without
/// materializing the tree.
struct TreeProductCheck {
  double ax_norm_p_p = 0.0;            // sum over right vertices of |(Ax)_r|^p
  std::int64_t internal_max_abs = 0;   // max |(Ax)_r| over internal rights, scaled; must be 0
  std::int64_t leaf_count = 0;         // should equal t (t-1)^ell (s-1)^ell
};

TreeProductCheck synthetic_tree_product(int t, int s, int ell, double p, std::uint64_t seed);

}  // namespace spreadlab
