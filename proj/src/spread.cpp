#include "spreadlab/spread.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spreadlab/graph.hpp"

namespace spreadlab {

double lp_norm(const Eigen::VectorXd& x, double p) {
  if (p < 1.0) throw InvalidParams("p must be >= 1");
  if (std::isinf(p)) return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  std::vector<double> terms(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) terms[i] = std::pow(std::abs(x[i]), p);
  return std::pow(pairwise_sum(terms.data(), terms.size()), 1.0 / p);
}

KSparseError best_k_sparse_error(const Eigen::VectorXd& x, int k, double p) {
  const int n = static_cast<int>(x.size());
  if (k < 1 || k > n) throw InvalidParams("k must be in [1, n]");
  const double total = lp_norm(x, p);
  if (total == 0.0) throw ZeroVector("best_k_sparse_error on zero vector");

  // top-k magnitudes; ties keep the smaller index
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });

  KSparseError out;
  out.support.assign(order.begin(), order.begin() + k);
  std::sort(out.support.begin(), out.support.end());

  Eigen::VectorXd residual = x;
  for (int i : out.support) residual[i] = 0.0;
  out.error = lp_norm(residual, p) / total;
  return out;
}

DistortionValue distortion(const Eigen::VectorXd& x, double q, double p) {
  if (q < 1.0 || q >= p) throw InvalidParams("need 1 <= q < p");
  const int n = static_cast<int>(x.size());
  const double nq = lp_norm(x, q);
  if (nq == 0.0) throw ZeroVector("distortion on zero vector");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  DistortionValue d;
  d.q = q;
  d.p = p;
  d.value = lp_norm(x, p) * std::pow(static_cast<double>(n), 1.0 / q - inv_p) / nq;
  return d;
}

double compressible_to_distortion_bound(int k, int n, double eps, double q, double p) {
  if (k < 1 || k > n || eps < 0.0) throw InvalidParams("need 0 < k <= n, eps >= 0");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return 1.0 / (std::pow(static_cast<double>(k) / n, 1.0 / q - inv_p) + eps);
}

double distortion_to_compressibility(const Eigen::VectorXd& x, int k, double q, double p) {
  const int n = static_cast<int>(x.size());
  if (k < 1 || k > n) throw InvalidParams("k must be in [1, n]");
  return std::pow(static_cast<double>(n) / k, 1.0 / q) / distortion(x, q, p).value;
}

double rip_to_spread_params(int k, double eps, double p, int n) {
  if (eps <= 0.0 || eps >= 1.0) throw InvalidParams("eps must lie in (0, 1)");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double pow_term = std::pow(2.0 * n / k, 1.0 - inv_p);
  return (1.0 - eps) / (2.0 + eps * (1.0 + pow_term));
}

double p_spread_to_q_spread(int k, double eps, double p, double q, int n) {
  if (q < 1.0 || q >= p) throw InvalidParams("need 1 <= q < p");
  return eps * eps * std::pow(static_cast<double>(k) / n, 1.0 / q);
}

}  // namespace spreadlab
