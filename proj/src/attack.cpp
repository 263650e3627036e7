#include "spreadlab/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "spreadlab/spectral.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {
namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double TreeVector::predicted_ax_norm_p(double p) const {
  const int ell = ball.radius;
  if (std::isinf(p)) return std::pow(s - 1.0, -ell);
  return t * std::pow(t - 1.0, ell) * std::pow(s - 1.0, (1.0 - p) * ell);
}

double TreeVector::predicted_x_norm_p(double p) const {
  const int ell = ball.radius;
  if (std::isinf(p)) return 1.0;
  double total = 1.0;
  for (int k = 1; k <= ell; ++k)
    total += t * std::pow(t - 1.0, k - 1) * std::pow(s - 1.0, (1.0 - p) * k);
  return total;
}

TreeVector build_tree_vector(const SignedBiregularMatrix& a, const TreeBall& ball) {
  TreeVector tv;
  try {
    tv.ball = build_ball(a.graph, ball.root, ball.radius, a.t, a.s);
  } catch (const Error& e) {
    throw InvalidBall(std::string("ball revalidation failed: ") + e.what());
  }
  tv.s = a.s;
  tv.t = a.t;
  const int ell = ball.radius;
  const std::int64_t scale = ipow(a.s - 1, ell);

  // integer values at scale (s-1)^ell; magnitude (s-1)^{ell-k} at depth 2k
  std::vector<std::int64_t> val(a.n(), 0);
  std::vector<char> in_ball(a.n(), 0);
  val[ball.root] = scale;
  in_ball[ball.root] = 1;
  for (int d = 2; d <= 2 * ell; d += 2) {
    for (int u : tv.ball.layers[d]) {
      const int r = tv.ball.parent_of_left[u];
      const int up = tv.ball.parent_of_right[r];
      val[u] = -val[up] * a.sign_of(up, r) * a.sign_of(u, r) / (a.s - 1);
      in_ball[u] = 1;
    }
  }

  // exact cancellation on internal right vertices
  for (int d = 1; d <= 2 * ell - 1; d += 2) {
    for (int r : tv.ball.layers[d]) {
      std::int64_t acc = 0;
      for (const auto& [u, sg] : a.rows[r]) acc += sg * val[u];
      if (acc != 0) throw InvalidBall("internal cancellation failed: ball is not acyclic");
    }
  }

  tv.x = SparseVector(a.n());
  for (int u = 0; u < a.n(); ++u)
    if (in_ball[u]) tv.x.set(u, static_cast<double>(val[u]) / static_cast<double>(scale));
  return tv;
}

ProjectionResult project_to_kernel(const SignedBiregularMatrix& a, const Eigen::VectorXd& x,
                                   double tol) {
  if (x.size() != a.n()) throw DimensionMismatch("project_to_kernel: vector length != n");
  const Eigen::VectorXd ax = a.apply(x);
  Eigen::VectorXd row_component;  // the projection of x onto the row space
  try {
    const Eigen::VectorXd z = solve_gram_cg(a, ax, tol / 10.0);
    row_component = a.apply_transpose(z);
  } catch (const RankDeficient&) {
    throw;
  } catch (const NoConvergence&) {
    if (a.n() > 512) throw;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a.dense());
    if (cod.rank() < a.m()) throw RankDeficient("A is not full row rank");
    row_component = cod.solve(ax);  // min-norm solution of Aw = Ax
  }
  ProjectionResult res;
  res.y = x - row_component;
  res.gap = (x - res.y).norm();
  const double yn = res.y.norm();
  const double ayn = a.apply(res.y).norm();
  if (yn == 0.0 || ayn > tol * std::max(yn, 1.0))
    throw NoConvergence("projected vector violates ||Ay|| <= tol ||y||: residual " +
                        std::to_string(yn == 0.0 ? 0.0 : ayn / yn));
  return res;
}

CompressibleWitness attack(const SignedBiregularMatrix& a, int max_radius, double tol,
                           int candidate_budget) {
  if (candidate_budget <= 0) candidate_budget = std::max(16, a.n() / 64);
  const auto [ell, roots] = best_acyclic_roots(a.graph, max_radius, candidate_budget);
  if (ell < 1) throw AttackFailed("no acyclic radius-3 ball exists");

  CompressibleWitness best;
  bool found = false;
  std::string last_error = "no candidate root produced a usable witness";
  for (int root : roots) {
    try {
      const TreeBall ball = build_ball(a.graph, root, ell, a.t, a.s);
      const TreeVector tv = build_tree_vector(a, ball);
      const Eigen::VectorXd x = tv.x.dense();
      const ProjectionResult proj = project_to_kernel(a, x, tol);
      const double xn = x.norm();
      if (proj.gap >= xn) continue;  // meaningless witness, try another root
      const double eps = proj.gap / (xn - proj.gap);
      if (found && eps >= best.epsilon) continue;
      CompressibleWitness w;
      w.y = proj.y;
      w.k = tv.x.nnz();
      w.epsilon = eps;
      w.p = 2.0;
      w.residual = a.apply(proj.y).norm() / proj.y.norm();
      w.distortion_lower_bound =
          compressible_to_distortion_bound(w.k, a.n(), eps, 1.0, 2.0);
      w.ell = ell;
      w.tree_x = tv.x;
      best = std::move(w);
      found = true;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  if (!found) throw AttackFailed(last_error);
  return best;
}

std::string CompressibleWitness::to_json(int n, int m, int s, int t, std::uint64_t seed) const {
  nlohmann::json j{{"n", n},
                   {"m", m},
                   {"s", s},
                   {"t", t},
                   {"seed", seed},
                   {"ell", ell},
                   {"k", k},
                   {"epsilon", epsilon},
                   {"residual", residual},
                   {"distortion_lower_bound", distortion_lower_bound}};
  std::vector<int> support;
  std::vector<double> values;
  for (const auto& [i, v] : tree_x.entries) {
    support.push_back(i);
    values.push_back(v);
  }
  j["support"] = support;
  j["values"] = values;
  return j.dump();
}

LpRatioWitness lp_ratio_witness(const SignedBiregularMatrix& a, const TreeBall& ball, double p,
                                double eps) {
  if (p < 1.0 || p >= 2.0) throw InvalidParams("lp_ratio_witness requires p in [1, 2)");
  LpRatioWitness w;
  w.tv = build_tree_vector(a, ball);
  const Eigen::VectorXd x = w.tv.x.dense();
  w.ratio = lp_norm(a.apply(x), p) / lp_norm(x, p);
  w.ratio_formula = std::pow(w.tv.predicted_ax_norm_p(p), 1.0 / p) /
                    std::pow(w.tv.predicted_x_norm_p(p), 1.0 / p);
  const double alpha = static_cast<double>(a.t) / a.s;
  w.converse_regime = std::pow(a.s - 1.0, 2.0 - p) <= 1.0 / ((1.0 + eps) * alpha);
  return w;
}

TreeProductCheck synthetic_tree_product(int t, int s, int ell, double p, std::uint64_t seed) {
  if (t < 2 || s < 2 || ell < 0) throw InvalidParams("need t, s >= 2 and ell >= 0");
  const std::int64_t scale = ipow(s - 1, ell);
  std::uint64_t state = seed;

  TreeProductCheck out;
  // histogram of |(Ax)_r| (scaled integers) over leaf right vertices; the
  // value is always 0 or small, so aggregate counts then weight by |.|^p once
  std::int64_t leaf_abs_one = 0;  // leaves with |(Ax)_r| == 1 at leaf scale
  double leaf_other_accum = 0.0;

  // signs come one bit at a time from a pooled splitmix64 stream
  std::uint64_t pool = 0;
  int pool_bits = 0;
  auto next_sign = [&]() -> int {
    if (pool_bits == 0) {
      pool = splitmix64(state);
      pool_bits = 64;
    }
    const int sgn = (pool & 1) ? 1 : -1;
    pool >>= 1;
    --pool_bits;
    return sgn;
  };

  // recursive descent over left vertices; x_val is the scaled value at this
  // left vertex, level k counts left levels from the root. A leaf right
  // vertex has the single entry e*x_val, so |(Ax)_r| = |x_val| regardless of
  // the sign and leaves aggregate in bulk; internal right vertices keep the
  // full signed sum.
  auto rec = [&](auto&& self, int k, std::int64_t x_val) -> void {
    const int branches = (k == 0) ? t : t - 1;
    if (k == ell) {
      const std::int64_t mag = x_val < 0 ? -x_val : x_val;
      out.leaf_count += branches;
      if (mag == 1) {
        leaf_abs_one += branches;
      } else {
        leaf_other_accum += branches * std::pow(static_cast<double>(mag) / scale, p);
      }
      return;
    }
    for (int b = 0; b < branches; ++b) {
      const int e_par = next_sign();
      std::int64_t acc = static_cast<std::int64_t>(e_par) * x_val;
      for (int c = 0; c < s - 1; ++c) {
        const int e_child = next_sign();
        const std::int64_t x_child = -x_val * e_par * e_child / (s - 1);
        acc += static_cast<std::int64_t>(e_child) * x_child;
        self(self, k + 1, x_child);
      }
      out.internal_max_abs =
          std::max(out.internal_max_abs, static_cast<std::int64_t>(std::llabs(acc)));
    }
  };
  rec(rec, 0, scale);

  out.ax_norm_p_p =
      static_cast<double>(leaf_abs_one) * std::pow(1.0 / static_cast<double>(scale), p) +
      leaf_other_accum;
  return out;
}

}  // namespace spreadlab
