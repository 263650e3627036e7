#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "spreadlab/graph.hpp"

namespace spreadlab {

struct SpectrumReport {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::string method;       // "dense" or "iterative"
  double band_center = 0.0; // sqrt(s-1)
  double band_radius_unit = 0.0;  // sqrt(t-1)
  double slack = 0.0;       // max |sigma - sqrt(s-1)| / sqrt(t-1)

  std::string to_json() const;
};

enum class SpectralMethod { dense, iterative };

/// Extreme singular values of A. Dense path runs a full SVD (n <= 2048);
/// iterative path uses power iteration on AA^T for sigma_max and inverse
/// iteration with CG inner solves for sigma_min, both to 1e-8 relative.
SpectrumReport singular_extremes(const SignedBiregularMatrix& a, SpectralMethod method);

/// M = AA^T - s*I as a dense symmetric matrix; the diagonal is exactly zero
/// by s-right-regularity (asserted).
Eigen::MatrixXd shifted_gram(const SignedBiregularMatrix& a);

/// Ordered pair of edges through a left vertex: e1 = {u, v}, e2 = {v, w} with
/// u, w right and distinct.
struct NomadicPair {
  int u = 0;  // first right vertex
  int v = 0;  // shared left vertex
  int w = 0;  // second right vertex
};

struct NomadicWalkMatrix {
  std::vector<NomadicPair> pairs;
  Eigen::MatrixXd b;  // dense; entries in {0, +1, -1}
};

/// Exact nomadic walk matrix; throws BudgetExceeded when the pair count
/// n*t*(t-1) exceeds the budget.
NomadicWalkMatrix nomadic_matrix(const SignedBiregularMatrix& a, std::int64_t budget = 20000);

/// Evaluates both sides of the modified Ihara-Bass identity
///   (1-z)^{n(t-1)-m} (1+(t-1)z)^{n-m} det(L(z)) = det(I - Bz),
///   L(z) = I - zM + z(t-2)I + z^2(s-1)(t-1)I,
/// at each z and returns the max relative discrepancy.
double ihara_bass_check(const SignedBiregularMatrix& a, const std::vector<double>& z_samples,
                        std::int64_t pair_budget = 2000);

/// Default z grid: 16 points uniform in the open interval
/// (-1/(2 sqrt((s-1)(t-1))), +1/(2 sqrt((s-1)(t-1)))), poles excluded.
std::vector<double> default_z_grid(int s, int t, int count = 16);

/// Interval for Spec(M) implied by rho(B) <= (1+eps) sqrt((s-1)(t-1)):
/// t-2 +/- (2+4 eps^2) sqrt((s-1)(t-1)). Requires eps <= 1/2.
std::pair<double, double> spectral_radius_reduction(double rho_b, int s, int t, double eps);

struct HikeRecord {
  std::vector<int> vertices;  // unified ids (right r -> r, left u -> n_right + u), 4*ell+1 long
  bool even = false;
  bool singleton_free = false;
  bool special = false;
};

/// All 2*ell-hikes of G: closed walks of length 4*ell from a right vertex,
/// non-backtracking except possibly between steps 2*ell and 2*ell+1.
/// Exponential enumeration; requires 4*ell <= 12 and |E| <= 16.
std::vector<HikeRecord> enumerate_hikes(const BipartiteGraph& g, int ell);

/// Integer count of even special 2*ell-hikes (the trace-identity oracle).
std::int64_t count_even_special_hikes(const BipartiteGraph& g, int ell);

/// Solves (AA^T) x = b by conjugate gradients with pairwise-summed dot
/// products. Throws RankDeficient on breakdown, NoConvergence past max_iter.
Eigen::VectorXd solve_gram_cg(const SignedBiregularMatrix& a, const Eigen::VectorXd& b,
                              double tol = 1e-10, int max_iter = 0);

}  // namespace spreadlab
