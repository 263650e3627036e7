#include "spreadlab/ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

namespace spreadlab {
namespace {

using EdgeList = std::vector<std::pair<int, int>>;

std::int64_t key_of(int u, int r, int m) { return static_cast<std::int64_t>(u) * m + r; }

struct EdgeMultiset {
  std::unordered_map<std::int64_t, int> count;
  int m;

  explicit EdgeMultiset(const EdgeList& edges, int m_) : m(m_) {
    for (const auto& [u, r] : edges) ++count[key_of(u, r, m)];
  }
  int mult(int u, int r) const {
    auto it = count.find(key_of(u, r, m));
    return it == count.end() ? 0 : it->second;
  }
  void add(int u, int r) { ++count[key_of(u, r, m)]; }
  void remove(int u, int r) {
    auto it = count.find(key_of(u, r, m));
    if (--it->second == 0) count.erase(it);
  }
};

// Swap edges i and j: (u1,r1),(u2,r2) -> (u1,r2),(u2,r1). Accepted only if it
// does not create a parallel edge. Returns true on acceptance.
bool try_swap(EdgeList& edges, EdgeMultiset& ms, std::size_t i, std::size_t j) {
  if (i == j) return false;
  auto [u1, r1] = edges[i];
  auto [u2, r2] = edges[j];
  if (u1 == u2 || r1 == r2) return false;
  if (ms.mult(u1, r2) > 0 || ms.mult(u2, r1) > 0) return false;
  ms.remove(u1, r1);
  ms.remove(u2, r2);
  ms.add(u1, r2);
  ms.add(u2, r1);
  edges[i] = {u1, r2};
  edges[j] = {u2, r1};
  return true;
}

}  // namespace

void EnsembleParams::validate() const {
  if (n <= 0 || m <= 0 || s <= 0 || t <= 0) throw InvalidParams("n, m, s, t must be positive");
  if (static_cast<std::int64_t>(n) * t != static_cast<std::int64_t>(m) * s)
    throw InvalidParams("edge-count consistency n*t = m*s violated");
  if (t < 3) throw InvalidParams("t must be >= 3");
  if (s < t) throw InvalidParams("s must be >= t");
  if (m >= n) throw InvalidParams("m must be < n");
}

BipartiteGraph sample_biregular_graph(const EnsembleParams& params, int burn_in_factor) {
  params.validate();
  if (params.s > params.n) throw InvalidParams("s > n: no simple biregular graph exists");
  std::mt19937_64 rng(params.seed);

  const std::int64_t num_edges = static_cast<std::int64_t>(params.n) * params.t;
  // Configuration model: left stub i belongs to left vertex i/t; shuffle the
  // right stubs (stub j -> right vertex j/s) and match positionally.
  std::vector<int> right_stubs(num_edges);
  for (std::int64_t j = 0; j < num_edges; ++j) right_stubs[j] = static_cast<int>(j / params.s);
  std::shuffle(right_stubs.begin(), right_stubs.end(), rng);

  EdgeList edges(num_edges);
  for (std::int64_t i = 0; i < num_edges; ++i)
    edges[i] = {static_cast<int>(i / params.t), right_stubs[i]};

  EdgeMultiset ms(edges, params.m);

  // Repair: while some parallel edge remains, swap one of its copies with a
  // uniformly random edge.
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  const std::int64_t max_failures = 100 * num_edges;
  std::int64_t failures = 0;
  auto find_duplicate = [&]() -> std::size_t {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (ms.mult(edges[i].first, edges[i].second) > 1) return i;
    return edges.size();
  };
  std::size_t dup = find_duplicate();
  while (dup != edges.size()) {
    if (try_swap(edges, ms, dup, pick(rng))) {
      dup = find_duplicate();
    } else if (++failures > max_failures) {
      throw SamplingFailure("edge-swap repair did not converge");
    }
  }

  // Mixing burn-in: fixed number of attempted uniform double-edge swaps,
  // accepting only those that keep the graph simple.
  const std::int64_t burn_in = static_cast<std::int64_t>(burn_in_factor) * num_edges;
  for (std::int64_t step = 0; step < burn_in; ++step) try_swap(edges, ms, pick(rng), pick(rng));

  BipartiteGraph g(params.n, params.m);
  for (const auto& [u, r] : edges) g.add_edge(u, r);
  g.finalize();
  return g;
}

SignedBiregularMatrix sample_biregular(const EnsembleParams& params, int burn_in_factor) {
  BipartiteGraph g = sample_biregular_graph(params, burn_in_factor);
  // Separate generator stream for signs so the graph alone is reproducible
  // from the same seed regardless of signing.
  std::mt19937_64 sign_rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> signs(g.edges.size());
  for (auto& sg : signs) sg = (sign_rng() & 1) ? 1 : -1;
  return SignedBiregularMatrix::from_graph(g, signs, params.t, params.s);
}

}  // namespace spreadlab
