#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "spreadlab/errors.hpp"

namespace spreadlab {

// Norm exponents p live in [1, inf]; pass std::numeric_limits<double>::infinity()
// for the max norm. All exponent formulas use the convention 1/inf = 0.

double lp_norm(const Eigen::VectorXd& x, double p);

struct KSparseError {
  double error = 0.0;            // min over k-sparse y of ||x-y||_p / ||x||_p
  std::vector<int> support;      // indices kept (k largest magnitudes, ties by index)
};

KSparseError best_k_sparse_error(const Eigen::VectorXd& x, int k, double p);

struct DistortionValue {
  double q = 0.0, p = 0.0;
  double value = 1.0;  // Delta_{q,p}(x) in [1, n^{1/q-1/p}]
};

DistortionValue distortion(const Eigen::VectorXd& x, double q, double p);

/// Lower bound on Delta_{q,p} implied by (k, eps)-compressibility:
/// 1 / ((k/n)^{1/q-1/p} + eps).
double compressible_to_distortion_bound(int k, int n, double eps, double q, double p);

/// Compressibility bound from distortion: eps = (n/k)^{1/q} / Delta_{q,p}(x).
double distortion_to_compressibility(const Eigen::VectorXd& x, int k, double q, double p);

/// eps' = (1-eps)/(2 + eps(1 + (2n/k)^{1-1/p})): kernel vectors of a
/// (k, eps)-l_p-RIP matrix are (k, eps')-l_p-spread.
double rip_to_spread_params(int k, double eps, double p, int n);

/// eps_q = eps^2 (k/n)^{1/q}: (2k, eps)-l_p-spread implies (k, eps_q)-l_q-spread.
double p_spread_to_q_spread(int k, double eps, double p, double q, int n);

}  // namespace spreadlab
