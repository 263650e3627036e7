#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spreadlab/graph.hpp"

namespace spreadlab {

/// Acyclic ball of radius 2*radius+1 (graph distance) around a left vertex.
/// Even depths hold left vertices, odd depths right vertices.
struct TreeBall {
  int root = 0;
  int radius = 0;  // the parameter ell; depth of the ball is 2*ell+1
  // layers[d] lists vertices at depth d (left indices at even d, right at odd)
  std::vector<std::vector<int>> layers;
  // parent of a vertex on the opposite side; parent_left[r] for odd-depth r,
  // parent_right[u] for even-depth u (root maps to -1). Only meaningful for
  // vertices present in layers.
  std::vector<int> parent_of_right;  // indexed by right vertex, -1 if absent
  std::vector<int> parent_of_left;   // indexed by left vertex, -1 if absent
};

struct ExpansionCertificate {
  double gamma = 0.0;
  double mu = 0.0;
  int max_set_size_checked = 0;
  std::string mode;  // "exhaustive" or "sampled"
  std::optional<std::vector<int>> counterexample;

  std::string to_json() const;
};

struct PeelMatching {
  std::vector<std::pair<int, int>> matched_edges;  // (left u, right r)
  std::vector<int> owner;                          // per right vertex: matched u, -1 if none
};

/// Largest ell in [1, max_radius] such that the radius-(2*ell+1) ball around
/// some left vertex is acyclic; ties by smallest vertex index. Throws NotFound
/// when no vertex admits even ell = 1.
TreeBall find_acyclic_ball(const BipartiteGraph& g, int t, int s, int max_radius);

/// Builds the ball of the given radius around root, checking acyclicity and
/// the biregular branching counts. Works for ell = 0 too.
TreeBall build_ball(const BipartiteGraph& g, int root, int ell, int t, int s);

/// Left vertices whose radius-(2*ell+1) balls are acyclic for the largest
/// attainable ell <= max_radius; at most max_count roots, ascending index.
/// first = that ell (0 when no vertex reaches even ell = 1).
std::pair<int, std::vector<int>> best_acyclic_roots(const BipartiteGraph& g, int max_radius,
                                                    int max_count);

struct BicycleWitness {
  bool ok = true;
  int offending_vertex = -1;  // unified index: left u -> u, right r -> n_left + r
};

/// True iff every radius-r ball contains at most one cycle (excess-edge count).
BicycleWitness is_bicycle_free(const std::vector<std::vector<int>>& adj, int radius);
BicycleWitness is_bicycle_free(const BipartiteGraph& g, int radius);

/// Right vertices adjacent to exactly one element of S.
std::vector<int> unique_neighbors(const BipartiteGraph& g, const std::vector<int>& S);

enum class ExpansionMode { exhaustive, sampled };

/// Checks |U(S)| >= t(1-mu)|S| for left sets S of size <= floor(gamma*n).
/// Exhaustive mode enumerates every such S and throws BudgetExceeded if that
/// would take more than `budget` sets; sampled mode draws `budget` random sets
/// per size. A violating S is returned inside the certificate.
ExpansionCertificate verify_unique_expansion(const BipartiteGraph& g, int t, double gamma,
                                             double mu, ExpansionMode mode, std::int64_t budget,
                                             std::uint64_t seed = 0);

/// Vertex-expansion variant: |N(S)| >= t(1-mu)|S|. A passing check implies
/// (gamma, 2*mu) unique expansion.
ExpansionCertificate verify_vertex_expansion(const BipartiteGraph& g, int t, double gamma,
                                             double mu, ExpansionMode mode, std::int64_t budget,
                                             std::uint64_t seed = 0);

/// Peeling matching for S under the certificate's mu: repeatedly peel the
/// smallest-index vertex with >= t(1-mu) unique neighbors among the unpeeled
/// set, matching it to those neighbors. Throws PeelStuck if no vertex is
/// eligible.
PeelMatching peel_matching(const BipartiteGraph& g, const std::vector<int>& S,
                           const ExpansionCertificate& cert, int t);

/// Splits heavy right vertices so the max right degree is at most t*n/m
/// (m = original right count), without decreasing |U(S)| for any S. At most
/// 3m right vertices in the result; left degrees unchanged.
BipartiteGraph bound_right_degrees(const BipartiteGraph& g, int t);

}  // namespace spreadlab
