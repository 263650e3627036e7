#include "spreadlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <json.hpp>

namespace spreadlab {
namespace {

Eigen::VectorXd gram_apply(const SignedBiregularMatrix& a, const Eigen::VectorXd& v) {
  return a.apply(a.apply_transpose(v));
}

// Largest eigenvalue of AA^T by power iteration with a fixed-seed start.
double power_iteration(const SignedBiregularMatrix& a, double rel_tol, int max_iter) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(a.m());
  for (int i = 0; i < a.m(); ++i) v[i] = gauss(rng);
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = gram_apply(a, v);
    const double next = pairwise_dot(v, w);
    const double wn = w.norm();
    if (wn == 0.0) throw RankDeficient("power iteration hit the kernel");
    v = w / wn;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) return next;
    lambda = next;
  }
  throw NoConvergence("power iteration on AA^T did not converge in " +
                      std::to_string(max_iter) + " iterations");
}

double inverse_iteration(const SignedBiregularMatrix& a, double rel_tol, int max_iter) {
  std::mt19937_64 rng(54321);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(a.m());
  for (int i = 0; i < a.m(); ++i) v[i] = gauss(rng);
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = solve_gram_cg(a, v, 1e-12);
    const double wn = w.norm();
    v = w / wn;
    const double next = pairwise_dot(v, gram_apply(a, v));
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) return next;
    lambda = next;
  }
  throw NoConvergence("inverse iteration on AA^T did not converge in " +
                      std::to_string(max_iter) + " iterations");
}

}  // namespace

std::string SpectrumReport::to_json() const {
  return nlohmann::json{{"sigma_min", sigma_min},
                        {"sigma_max", sigma_max},
                        {"method", method},
                        {"slack", slack},
                        {"band", {{"center", band_center}, {"unit", band_radius_unit}}}}
      .dump();
}

Eigen::VectorXd solve_gram_cg(const SignedBiregularMatrix& a, const Eigen::VectorXd& b,
                              double tol, int max_iter) {
  if (b.size() != a.m()) throw DimensionMismatch("solve_gram_cg: rhs length != m");
  if (max_iter <= 0) max_iter = 20 * a.m() + 100;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.m());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rs = pairwise_dot(r, r);
  const double b2 = std::sqrt(pairwise_dot(b, b));
  if (b2 == 0.0) return x;
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(rs) <= tol * b2) return x;
    Eigen::VectorXd ap = gram_apply(a, p);
    const double pap = pairwise_dot(p, ap);
    if (pap <= 1e-14 * pairwise_dot(p, p))
      throw RankDeficient("CG breakdown: AA^T is numerically singular");
    const double alpha = rs / pap;
    x += alpha * p;
    r -= alpha * ap;
    const double rs_new = pairwise_dot(r, r);
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  if (std::sqrt(rs) <= tol * b2) return x;
  throw NoConvergence("CG on AA^T: residual " + std::to_string(std::sqrt(rs) / b2) +
                      " after " + std::to_string(max_iter) + " iterations");
}

SpectrumReport singular_extremes(const SignedBiregularMatrix& a, SpectralMethod method) {
  SpectrumReport rep;
  rep.band_center = std::sqrt(a.s - 1.0);
  rep.band_radius_unit = std::sqrt(a.t - 1.0);
  if (method == SpectralMethod::dense) {
    if (a.n() > 2048) throw InvalidParams("dense SVD limited to n <= 2048");
    rep.method = "dense";
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a.dense());
    const auto& sv = svd.singularValues();
    rep.sigma_max = sv(0);
    rep.sigma_min = sv(sv.size() - 1);
  } else {
    rep.method = "iterative";
    rep.sigma_max = std::sqrt(power_iteration(a, 1e-8, 100000));
    rep.sigma_min = std::sqrt(inverse_iteration(a, 1e-8, 100000));
  }
  rep.slack = std::max(std::abs(rep.sigma_max - rep.band_center),
                       std::abs(rep.sigma_min - rep.band_center)) /
              rep.band_radius_unit;
  return rep;
}

Eigen::MatrixXd shifted_gram(const SignedBiregularMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.m(), a.m());
  for (int u = 0; u < a.n(); ++u)
    for (const auto& [r1, s1] : a.cols[u])
      for (const auto& [r2, s2] : a.cols[u]) m(r1, r2) += s1 * s2;
  m.diagonal().array() -= a.s;
  if (m.diagonal().cwiseAbs().maxCoeff() != 0.0)
    throw InvalidParams("AA^T diagonal is not s: matrix is not s-right-regular");
  return m;
}

NomadicWalkMatrix nomadic_matrix(const SignedBiregularMatrix& a, std::int64_t budget) {
  const std::int64_t count =
      static_cast<std::int64_t>(a.n()) * a.t * (a.t - 1);
  if (count > budget)
    throw BudgetExceeded("nomadic pair count " + std::to_string(count) + " exceeds budget");

  NomadicWalkMatrix nm;
  nm.pairs.reserve(count);
  for (int v = 0; v < a.n(); ++v)
    for (const auto& [u, su] : a.cols[v])
      for (const auto& [w, sw] : a.cols[v])
        if (u != w) nm.pairs.push_back({u, v, w});

  // pairs grouped by their first right vertex for the transition scan
  std::vector<std::vector<int>> by_first(a.m());
  for (std::size_t i = 0; i < nm.pairs.size(); ++i) by_first[nm.pairs[i].u].push_back(i);

  const int np = static_cast<int>(nm.pairs.size());
  nm.b = Eigen::MatrixXd::Zero(np, np);
  for (int i = 0; i < np; ++i) {
    const auto& [u, v, w] = nm.pairs[i];
    for (int j : by_first[w]) {
      const auto& [u2, v2, w2] = nm.pairs[j];
      if (v2 == v) continue;  // e3 == e2 would backtrack
      nm.b(i, j) = static_cast<double>(a.sign_of(v2, u2) * a.sign_of(v2, w2));
    }
  }
  return nm;
}

std::vector<double> default_z_grid(int s, int t, int count) {
  const double radius = 1.0 / (2.0 * std::sqrt((s - 1.0) * (t - 1.0)));
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = -radius + (i + 0.5) * (2.0 * radius / count);
  return grid;
}

double ihara_bass_check(const SignedBiregularMatrix& a, const std::vector<double>& z_samples,
                        std::int64_t pair_budget) {
  const NomadicWalkMatrix nm = nomadic_matrix(a, pair_budget);
  const Eigen::MatrixXd m = shifted_gram(a);
  const int n = a.n(), t = a.t, s = a.s;
  // Exponents make both sides match in degree: the left factor absorbs the
  // dimension gap between L (m x m) and B (nt(t-1) square).
  const int e1 = n * (t - 1) - a.m();
  const int e2 = n - a.m();
  const Eigen::MatrixXd eye_m = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  const Eigen::MatrixXd eye_b = Eigen::MatrixXd::Identity(nm.b.rows(), nm.b.cols());

  double worst = 0.0;
  for (double z : z_samples) {
    const Eigen::MatrixXd lmat =
        (1.0 + z * (t - 2) + z * z * (s - 1.0) * (t - 1.0)) * eye_m - z * m;
    const double lhs = std::pow(1.0 - z, e1) * std::pow(1.0 + (t - 1.0) * z, e2) *
                       lmat.partialPivLu().determinant();
    const double rhs = (eye_b - z * nm.b).partialPivLu().determinant();
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

std::pair<double, double> spectral_radius_reduction(double rho_b, int s, int t, double eps) {
  const double unit = std::sqrt((s - 1.0) * (t - 1.0));
  if (eps > 0.5) throw HypothesisViolated("requires eps <= 1/2");
  if (rho_b > (1.0 + eps) * unit + 1e-12)
    throw HypothesisViolated("rho(B) exceeds (1+eps) sqrt((s-1)(t-1))");
  const double half_width = (2.0 + 4.0 * eps * eps) * unit;
  return {t - 2.0 - half_width, t - 2.0 + half_width};
}

std::vector<HikeRecord> enumerate_hikes(const BipartiteGraph& g, int ell) {
  if (ell < 1) throw InvalidParams("ell must be >= 1");
  if (4 * ell > 12 || static_cast<int>(g.edges.size()) > 16)
    throw BudgetExceeded("hike enumeration limited to 4*ell <= 12 and |E| <= 16");
  const int steps = 4 * ell;
  const int nr = g.n_right;

  std::vector<HikeRecord> out;
  std::vector<int> walk;          // unified ids: right r -> r, left u -> nr + u
  std::vector<std::pair<int, int>> edges_taken;  // canonical (u, r) per step

  auto canonical = [&](int x, int y) {
    // one of x, y is a left id (>= nr)
    return x >= nr ? std::make_pair(x - nr, y) : std::make_pair(y - nr, x);
  };

  std::function<void(int, int)> dfs = [&](int cur, int step) {
    if (step == steps) {
      if (cur != walk.front()) return;
      HikeRecord rec;
      rec.vertices = walk;
      std::map<std::pair<int, int>, int> mult;
      for (const auto& e : edges_taken) ++mult[e];
      rec.even = true;
      rec.singleton_free = true;
      for (const auto& [e, c] : mult) {
        if (c % 2 != 0) rec.even = false;
        if (c == 1) rec.singleton_free = false;
      }
      rec.special = edges_taken[0] == edges_taken[steps - 1] &&
                    edges_taken[1] == edges_taken[steps - 2] &&
                    edges_taken[2 * ell - 1] == edges_taken[2 * ell] &&
                    edges_taken[2 * ell - 2] == edges_taken[2 * ell + 1];
      out.push_back(std::move(rec));
      return;
    }
    const bool at_right = cur < nr;
    const auto& adj = at_right ? g.right_adj[cur] : g.left_adj[cur - nr];
    for (int y_raw : adj) {
      const int next = at_right ? nr + y_raw : y_raw;
      const auto e = canonical(cur, next);
      // non-backtracking except between steps 2*ell and 2*ell+1
      if (step > 0 && step != 2 * ell && e == edges_taken.back()) continue;
      walk.push_back(next);
      edges_taken.push_back(e);
      dfs(next, step + 1);
      walk.pop_back();
      edges_taken.pop_back();
    }
  };

  for (int r = 0; r < nr; ++r) {
    walk.assign(1, r);
    edges_taken.clear();
    dfs(r, 0);
  }
  return out;
}

std::int64_t count_even_special_hikes(const BipartiteGraph& g, int ell) {
  std::int64_t c = 0;
  for (const auto& h : enumerate_hikes(g, ell))
    if (h.even && h.special) ++c;
  return c;
}

}  // namespace spreadlab
