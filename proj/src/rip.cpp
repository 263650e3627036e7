#include "spreadlab/rip.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "spreadlab/spread.hpp"

namespace spreadlab {
namespace {

double lp_norm_vec(const Eigen::VectorXd& v, double p) { return lp_norm(v, p); }

Eigen::VectorXd normalize_p(const Eigen::VectorXd& c, double p) {
  const double n = lp_norm_vec(c, p);
  return n == 0.0 ? c : Eigen::VectorXd(c / n);
}

// subgradient of ||v||_p with respect to v (any selection at kinks)
Eigen::VectorXd lp_grad(const Eigen::VectorXd& v, double p) {
  const double n = lp_norm_vec(v, p);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(v.size());
  if (n == 0.0) return g;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a == 0.0) continue;
    g[i] = (v[i] > 0 ? 1.0 : -1.0) * std::pow(a / n, p - 1.0);
  }
  return g;
}

// minimize (or maximize) ||Bc||_p / ||c||_p over c != 0 by projected
// subgradient descent with backtracking, from a given start
double extremize_ratio(const Eigen::MatrixXd& b, Eigen::VectorXd c, double p, bool maximize,
                       int iters = 80) {
  c = normalize_p(c, p);
  auto ratio = [&](const Eigen::VectorXd& x) { return lp_norm_vec(b * x, p) / lp_norm_vec(x, p); };
  double best = ratio(c);
  double step = 0.3;
  for (int it = 0; it < iters && step > 1e-12; ++it) {
    const Eigen::VectorXd u = b * c;
    const double un = lp_norm_vec(u, p), cn = lp_norm_vec(c, p);
    // gradient of ||Bc||_p/||c||_p
    Eigen::VectorXd g = (b.transpose() * lp_grad(u, p)) / cn - (un / (cn * cn)) * lp_grad(c, p);
    const double gn = g.norm();
    if (gn == 0.0) break;
    g /= gn;
    const Eigen::VectorXd shifted = maximize ? (c + step * g).eval() : (c - step * g).eval();
    const Eigen::VectorXd cand = normalize_p(shifted, p);
    const double r = ratio(cand);
    if (maximize ? r > best : r < best) {
      best = r;
      c = cand;
      step *= 1.2;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

void probe_support(const Eigen::MatrixXd& dense_a, const std::vector<int>& support, double p,
                   int restarts, std::mt19937_64& rng, double& min_ratio, double& max_ratio) {
  const int k = static_cast<int>(support.size());
  Eigen::MatrixXd sub(dense_a.rows(), k);
  for (int j = 0; j < k; ++j) sub.col(j) = dense_a.col(support[j]);

  if (p == 2.0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    const auto& sv = svd.singularValues();
    max_ratio = std::max(max_ratio, sv(0));
    min_ratio = std::min(min_ratio, sv(sv.size() - 1));
    return;
  }

  std::normal_distribution<double> gauss;
  std::vector<Eigen::VectorXd> seeds;
  for (int j = 0; j < k; ++j) seeds.push_back(Eigen::VectorXd::Unit(k, j));
  seeds.push_back(Eigen::VectorXd::Ones(k));
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd c(k);
    for (int j = 0; j < k; ++j) c[j] = gauss(rng);
    seeds.push_back(std::move(c));
  }
  for (const auto& seed : seeds) {
    if (lp_norm(seed, p) == 0.0) continue;
    min_ratio = std::min(min_ratio, extremize_ratio(sub, seed, p, false));
    max_ratio = std::max(max_ratio, extremize_ratio(sub, seed, p, true));
  }
}

}  // namespace

std::string RipCertificate::to_json() const {
  return nlohmann::json{{"p", p},         {"k", k},           {"epsilon", epsilon},
                        {"K", K},         {"delta1", delta1}, {"delta2", delta2},
                        {"gamma", gamma}, {"mu", mu},         {"t", t},
                        {"s_max", s_max}}
      .dump();
}

std::string RipProbe::to_json() const {
  return nlohmann::json{{"p", p},
                        {"k", k},
                        {"min_ratio", min_ratio},
                        {"max_ratio", max_ratio},
                        {"mode", mode}}
      .dump();
}

std::pair<double, double> rip_bounds_from_expansion(int t, int s_max, double mu, double p,
                                                    double delta1, double delta2) {
  if (p < 1.0) throw InvalidParams("p must be >= 1");
  if (mu < 0.0 || mu >= 1.0) throw InvalidParams("mu must lie in [0, 1)");
  if (delta1 <= 0.0) throw InvalidDelta("delta1 must be positive");
  if (delta2 <= 0.0 || delta2 >= 1.0) throw InvalidDelta("delta2 must lie in (0, 1)");
  const double sterm = std::pow(s_max - 1.0, p - 1.0);
  const double lower = t * (1.0 - mu) / std::pow(1.0 + delta1, p - 1.0) -
                       mu * t / std::pow(delta1, p - 1.0) * sterm;
  const double upper = t / std::pow(1.0 - delta2, p - 1.0) +
                       mu * t / std::pow(delta2, p - 1.0) * sterm;
  return {lower, upper};
}

namespace {

template <typename F>
double golden_section(F f, double lo, double hi, bool maximize) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    const bool pick_left = maximize ? f(c) > f(d) : f(c) < f(d);
    if (pick_left)
      b = d;
    else
      a = c;
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return (a + b) / 2.0;
}

}  // namespace

double best_delta1(int t, int s_max, double mu, double p) {
  return golden_section(
      [&](double d) { return rip_bounds_from_expansion(t, s_max, mu, p, d, 0.5).first; }, 1e-9,
      10.0, true);
}

double best_delta2(int t, int s_max, double mu, double p) {
  return golden_section(
      [&](double d) { return rip_bounds_from_expansion(t, s_max, mu, p, 1.0, d).second; }, 1e-9,
      1.0 - 1e-9, false);
}

RipCertificate certify_rip(const ExpansionCertificate& cert, int t, int s_max, double p,
                           double eps) {
  if (p < 1.0 || p >= 2.0) throw InvalidParams("certify_rip requires p in [1, 2)");
  if (eps <= 0.0 || eps > 1.0) throw InvalidParams("eps must lie in (0, 1]");
  if (cert.counterexample)
    throw PreconditionFailed("expansion certificate carries a counterexample");
  const double needed = 9.0 * cert.mu * std::pow(static_cast<double>(s_max), p - 1.0);
  if (eps * eps < needed)
    throw PreconditionFailed("eps^2 = " + std::to_string(eps * eps) +
                             " < 9 mu s_max^{p-1} = " + std::to_string(needed));
  RipCertificate rc;
  rc.p = p;
  rc.k = cert.max_set_size_checked;
  rc.epsilon = eps;
  rc.K = std::pow(static_cast<double>(t), 1.0 / p);
  rc.delta1 = rc.delta2 = eps / 3.0;
  rc.gamma = cert.gamma;
  rc.mu = cert.mu;
  rc.t = t;
  rc.s_max = s_max;
  return rc;
}

RipProbe probe_rip(const SignedBiregularMatrix& a, double p, int k, ExpansionMode mode,
                   std::int64_t budget, int restarts, std::uint64_t seed) {
  if (k < 1 || k > a.n()) throw InvalidParams("k must lie in [1, n]");
  RipProbe probe;
  probe.p = p;
  probe.k = k;
  probe.min_ratio = std::numeric_limits<double>::infinity();
  probe.max_ratio = 0.0;
  const Eigen::MatrixXd dense = a.dense();
  std::mt19937_64 rng(seed);
  const int n = a.n();

  if (mode == ExpansionMode::exhaustive) {
    probe.mode = "exhaustive-support";
    double count = 1.0;
    for (int i = 0; i < k; ++i) count *= static_cast<double>(n - i) / (i + 1);
    if (count > static_cast<double>(budget))
      throw BudgetExceeded("C(n,k) = " + std::to_string(count) + " exceeds budget");
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      probe_support(dense, idx, p, restarts, rng, probe.min_ratio, probe.max_ratio);
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  } else {
    probe.mode = "sampled";
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (std::int64_t draw = 0; draw < budget; ++draw) {
      for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      std::vector<int> support(pool.begin(), pool.begin() + k);
      std::sort(support.begin(), support.end());
      probe_support(dense, support, p, restarts, rng, probe.min_ratio, probe.max_ratio);
    }
  }
  return probe;
}

PipelineResult explicit_pipeline(const BipartiteGraph& g, int t, double gamma, double mu,
                                 double p, double eps, std::int64_t budget) {
  const BipartiteGraph bounded = bound_right_degrees(g, t);
  const ExpansionCertificate cert =
      verify_unique_expansion(bounded, t, gamma, mu, ExpansionMode::exhaustive, budget);
  if (cert.counterexample)
    throw PreconditionFailed("claimed (gamma, mu) expansion refuted: worst mu = " +
                             std::to_string(cert.mu));
  const int s_max = bounded.max_right_degree();

  PipelineResult out;
  out.matrix = SignedBiregularMatrix::unsigned_adjacency(bounded, t);
  out.certificate = certify_rip(cert, t, s_max, p, eps);
  out.spread_k = out.certificate.k;
  out.spread_eps = rip_to_spread_params(out.certificate.k, eps, p, g.n_left);
  return out;
}

double weak_l2_bound(int t, double gamma, double mu, int n, double a_opnorm, double c1, double c2,
                     double c) {
  if (mu <= 0.0 || mu > 2.0 / 9.0) throw HypothesisViolated("requires 0 < mu <= 2/9");
  if (gamma > 2.0 * mu) throw HypothesisViolated("requires gamma <= 2 mu");
  const double gn = gamma * n;
  if (gn < std::pow(1.0 / mu, c)) throw HypothesisViolated("requires gamma n >= (1/mu)^c");
  const double base = std::sqrt(static_cast<double>(t)) / a_opnorm;
  const double expo = c2 * std::log(gn) / std::log(1.0 / mu);
  return c1 * std::sqrt(static_cast<double>(t)) * std::pow(base, expo);
}

std::vector<std::vector<int>> disjoint_unique_neighbor_sets(
    const BipartiteGraph& g, const std::vector<std::vector<int>>& sets) {
  std::vector<char> seen(g.n_left, 0);
  std::vector<int> all;
  for (const auto& s : sets)
    for (int u : s) {
      if (seen[u]) throw InvalidParams("sets must be pairwise disjoint");
      seen[u] = 1;
      all.push_back(u);
    }
  const std::vector<int> uall = unique_neighbors(g, all);
  std::vector<char> is_unique(g.n_right, 0);
  for (int r : uall) is_unique[r] = 1;

  std::vector<std::vector<int>> out;
  for (const auto& s : sets) {
    std::vector<char> in_n(g.n_right, 0);
    for (int u : s)
      for (int r : g.left_adj[u]) in_n[r] = 1;
    std::vector<int> ti;
    for (int r = 0; r < g.n_right; ++r)
      if (in_n[r] && is_unique[r]) ti.push_back(r);
    out.push_back(std::move(ti));
  }
  return out;
}

}  // namespace spreadlab
