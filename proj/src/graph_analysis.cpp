#include "spreadlab/graph_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include <json.hpp>

namespace spreadlab {
namespace {

// Largest radius R such that the ball B(v, R) in the unified graph is acyclic.
// Returns cap if no cycle shows up within distance cap. Exploits bipartiteness:
// non-tree edges always join consecutive BFS levels.
int max_acyclic_radius(const BipartiteGraph& g, int left_root, int cap) {
  const int n = g.n_left;
  std::vector<int> depth(n + g.n_right, -1);
  std::vector<int> parent(n + g.n_right, -1);
  std::deque<int> frontier{left_root};
  depth[left_root] = 0;
  int d = 0;
  while (!frontier.empty() && d < cap) {
    ++d;
    std::deque<int> next;
    int found = cap + 1;  // smallest acyclic radius implied by collisions at this level
    for (int x : frontier) {
      const bool x_left = x < n;
      const auto& adj = x_left ? g.left_adj[x] : g.right_adj[x - n];
      for (int y_raw : adj) {
        const int y = x_left ? n + y_raw : y_raw;
        if (y == parent[x]) continue;
        if (depth[y] == -1) {
          depth[y] = d;
          parent[y] = x;
          next.push_back(y);
        } else if (depth[y] == d) {
          // two level-(d-1) vertices reached y: cycle inside B(v, d)
          found = std::min(found, d - 1);
        } else {
          // back edge to level d-2: cycle inside B(v, d-1)
          found = std::min(found, d - 2);
        }
      }
    }
    if (found <= cap) return found;
    frontier = std::move(next);
  }
  return cap;
}

double worst_mu_of(const BipartiteGraph& g, int t, const std::vector<int>& S, bool unique_mode,
                   std::vector<int>& scratch_count, std::vector<int>& touched) {
  touched.clear();
  for (int u : S)
    for (int r : g.left_adj[u]) {
      if (scratch_count[r] == 0) touched.push_back(r);
      ++scratch_count[r];
    }
  int good = 0;
  for (int r : touched) {
    if (unique_mode ? scratch_count[r] == 1 : scratch_count[r] >= 1) ++good;
    scratch_count[r] = 0;
  }
  return 1.0 - static_cast<double>(good) / (static_cast<double>(t) * S.size());
}

ExpansionCertificate verify_expansion_impl(const BipartiteGraph& g, int t, double gamma, double mu,
                                           ExpansionMode mode, std::int64_t budget,
                                           std::uint64_t seed, bool unique_mode) {
  if (!g.is_left_regular(t)) throw InvalidParams("graph is not t-left-regular");
  const int n = g.n_left;
  const int kmax = std::max(0, std::min(n, static_cast<int>(std::floor(gamma * n))));

  ExpansionCertificate cert;
  cert.gamma = gamma;
  cert.max_set_size_checked = kmax;
  cert.mode = mode == ExpansionMode::exhaustive ? "exhaustive" : "sampled";

  double worst = 0.0;
  std::vector<int> worst_set;
  std::vector<int> scratch(g.n_right, 0), touched;

  auto consider = [&](const std::vector<int>& S) {
    const double w = worst_mu_of(g, t, S, unique_mode, scratch, touched);
    if (w > worst) {
      worst = w;
      worst_set = S;
    }
  };

  if (mode == ExpansionMode::exhaustive) {
    // count sets first so the budget check is not silent
    double total = 0.0;
    for (int k = 1; k <= kmax; ++k) {
      double c = 1.0;
      for (int i = 0; i < k; ++i) c *= static_cast<double>(n - i) / (i + 1);
      total += c;
      if (total > static_cast<double>(budget))
        throw BudgetExceeded("exhaustive expansion check needs " + std::to_string(total) +
                             " sets, budget " + std::to_string(budget));
    }
    for (int k = 1; k <= kmax; ++k) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        consider(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int k = 1; k <= kmax; ++k) {
      for (std::int64_t draw = 0; draw < budget; ++draw) {
        for (int i = 0; i < k; ++i) {
          std::uniform_int_distribution<int> pick(i, n - 1);
          std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<int> S(pool.begin(), pool.begin() + k);
        std::sort(S.begin(), S.end());
        consider(S);
      }
    }
  }

  cert.mu = std::max(0.0, worst);
  if (worst > mu + 1e-12) cert.counterexample = worst_set;
  return cert;
}

}  // namespace

std::string ExpansionCertificate::to_json() const {
  nlohmann::json j{{"gamma", gamma},
                   {"mu", mu},
                   {"max_set_size_checked", max_set_size_checked},
                   {"mode", mode}};
  if (counterexample) j["counterexample"] = *counterexample;
  return j.dump();
}

TreeBall build_ball(const BipartiteGraph& g, int root, int ell, int t, int s) {
  if (root < 0 || root >= g.n_left) throw InvalidParams("root out of range");
  TreeBall ball;
  ball.root = root;
  ball.radius = ell;
  ball.layers.assign(2 * ell + 2, {});
  ball.parent_of_right.assign(g.n_right, -1);
  ball.parent_of_left.assign(g.n_left, -1);

  std::vector<char> seen_left(g.n_left, 0), seen_right(g.n_right, 0);
  seen_left[root] = 1;
  ball.layers[0] = {root};
  if (static_cast<int>(g.left_adj[root].size()) != t)
    throw InvalidBall("root degree is not t");

  for (int d = 0; d <= 2 * ell; ++d) {
    const bool from_left = d % 2 == 0;
    for (int x : ball.layers[d]) {
      const auto& adj = from_left ? g.left_adj[x] : g.right_adj[x];
      const int par = from_left ? ball.parent_of_left[x] : ball.parent_of_right[x];
      if (from_left) {
        if (static_cast<int>(adj.size()) != t) throw InvalidBall("internal left degree != t");
      } else if (d <= 2 * ell - 1) {
        if (static_cast<int>(adj.size()) != s) throw InvalidBall("internal right degree != s");
      }
      for (int y : adj) {
        if (y == par) continue;
        auto& seen = from_left ? seen_right : seen_left;
        if (seen[y]) throw InvalidBall("ball contains a cycle");
        seen[y] = 1;
        (from_left ? ball.parent_of_right : ball.parent_of_left)[y] = x;
        ball.layers[d + 1].push_back(y);
      }
    }
  }
  return ball;
}

std::pair<int, std::vector<int>> best_acyclic_roots(const BipartiteGraph& g, int max_radius,
                                                    int max_count) {
  int best_ell = 0;
  std::vector<int> roots;
  const int cap = 2 * max_radius + 1;
  for (int v = 0; v < g.n_left; ++v) {
    const int r = max_acyclic_radius(g, v, cap);
    const int ell = std::min(max_radius, r >= 1 ? (r - 1) / 2 : 0);
    if (ell > best_ell) {
      best_ell = ell;
      roots.assign(1, v);
    } else if (ell == best_ell && best_ell >= 1 &&
               static_cast<int>(roots.size()) < max_count) {
      roots.push_back(v);
    }
  }
  if (static_cast<int>(roots.size()) > max_count) roots.resize(max_count);
  return {best_ell, std::move(roots)};
}

TreeBall find_acyclic_ball(const BipartiteGraph& g, int t, int s, int max_radius) {
  if (!g.is_biregular(t, s)) throw InvalidParams("graph is not (t,s)-biregular");
  const auto [ell, roots] = best_acyclic_roots(g, max_radius, 1);
  if (ell < 1) throw NotFound("no left vertex has an acyclic radius-3 ball");
  return build_ball(g, roots.front(), ell, t, s);
}

BicycleWitness is_bicycle_free(const std::vector<std::vector<int>>& adj, int radius) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> depth(n, -1);
  std::vector<int> ball;
  for (int v = 0; v < n; ++v) {
    ball.clear();
    ball.push_back(v);
    depth[v] = 0;
    for (std::size_t head = 0; head < ball.size(); ++head) {
      const int x = ball[head];
      if (depth[x] == radius) continue;
      for (int y : adj[x]) {
        if (depth[y] == -1) {
          depth[y] = depth[x] + 1;
          ball.push_back(y);
        }
      }
    }
    std::int64_t twice_edges = 0;
    for (int x : ball)
      for (int y : adj[x])
        if (depth[y] != -1) ++twice_edges;
    const std::int64_t excess = twice_edges / 2 - static_cast<std::int64_t>(ball.size()) + 1;
    for (int x : ball) depth[x] = -1;
    if (excess >= 2) return {false, v};
  }
  return {true, -1};
}

BicycleWitness is_bicycle_free(const BipartiteGraph& g, int radius) {
  std::vector<std::vector<int>> adj(g.n_left + g.n_right);
  for (const auto& [u, r] : g.edges) {
    adj[u].push_back(g.n_left + r);
    adj[g.n_left + r].push_back(u);
  }
  return is_bicycle_free(adj, radius);
}

std::vector<int> unique_neighbors(const BipartiteGraph& g, const std::vector<int>& S) {
  std::vector<int> count(g.n_right, 0);
  for (int u : S)
    for (int r : g.left_adj[u]) ++count[r];
  std::vector<int> out;
  for (int r = 0; r < g.n_right; ++r)
    if (count[r] == 1) out.push_back(r);
  return out;
}

ExpansionCertificate verify_unique_expansion(const BipartiteGraph& g, int t, double gamma,
                                             double mu, ExpansionMode mode, std::int64_t budget,
                                             std::uint64_t seed) {
  return verify_expansion_impl(g, t, gamma, mu, mode, budget, seed, true);
}

ExpansionCertificate verify_vertex_expansion(const BipartiteGraph& g, int t, double gamma,
                                             double mu, ExpansionMode mode, std::int64_t budget,
                                             std::uint64_t seed) {
  return verify_expansion_impl(g, t, gamma, mu, mode, budget, seed, false);
}

PeelMatching peel_matching(const BipartiteGraph& g, const std::vector<int>& S,
                           const ExpansionCertificate& cert, int t) {
  if (!g.is_left_regular(t)) throw InvalidParams("graph is not t-left-regular");
  const double threshold = t * (1.0 - cert.mu) - 1e-9;

  PeelMatching pm;
  pm.owner.assign(g.n_right, -1);
  std::vector<char> peeled(g.n_left, 0);
  // remaining[r]: unpeeled S-members adjacent to r
  std::vector<int> remaining(g.n_right, 0);
  for (int u : S)
    for (int r : g.left_adj[u]) ++remaining[r];

  std::size_t left = S.size();
  while (left > 0) {
    int chosen = -1;
    std::vector<int> uniq;
    for (int v : S) {
      if (peeled[v]) continue;
      uniq.clear();
      for (int r : g.left_adj[v])
        if (remaining[r] == 1) uniq.push_back(r);
      if (static_cast<double>(uniq.size()) >= threshold) {
        chosen = v;
        break;
      }
    }
    if (chosen == -1)
      throw PeelStuck("no vertex has enough unique neighbors; certificate invalid for this set");
    for (int r : uniq) {
      pm.matched_edges.emplace_back(chosen, r);
      pm.owner[r] = chosen;
    }
    peeled[chosen] = 1;
    for (int r : g.left_adj[chosen]) --remaining[r];
    --left;
  }
  return pm;
}

BipartiteGraph bound_right_degrees(const BipartiteGraph& g, int t) {
  if (!g.is_left_regular(t)) throw InvalidParams("graph is not t-left-regular");
  const int n = g.n_left, m = g.n_right;
  if (m > n) throw InvalidParams("requires |V_R| <= |V_L|");
  // cap = t/beta with beta = m/n; integer comparison deg*m > t*n avoids rounding
  const std::int64_t tn = static_cast<std::int64_t>(t) * n;
  const int chunk = static_cast<int>(tn / m);

  std::vector<std::vector<int>> right_edges(m);
  for (const auto& [u, r] : g.edges) right_edges[r].push_back(u);
  for (auto& lst : right_edges) std::sort(lst.begin(), lst.end());

  for (std::size_t r = 0; r < right_edges.size(); ++r) {
    while (static_cast<std::int64_t>(right_edges[r].size()) * m > tn) {
      std::vector<int> moved(right_edges[r].begin(), right_edges[r].begin() + chunk);
      right_edges[r].erase(right_edges[r].begin(), right_edges[r].begin() + chunk);
      right_edges.push_back(std::move(moved));
    }
  }

  BipartiteGraph out(n, static_cast<int>(right_edges.size()));
  for (std::size_t r = 0; r < right_edges.size(); ++r)
    for (int u : right_edges[r]) out.add_edge(u, static_cast<int>(r));
  out.finalize();
  return out;
}

}  // namespace spreadlab
