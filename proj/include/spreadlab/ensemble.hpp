#pragma once

#include <cstdint>

#include "spreadlab/graph.hpp"

namespace spreadlab {

struct EnsembleParams {
  int n = 0;  // columns / left vertices
  int m = 0;  // rows / right vertices
  int s = 0;  // row sparsity (right degree)
  int t = 0;  // column sparsity (left degree)
  std::uint64_t seed = 0;

  /// Throws InvalidParams unless n*t == m*s, t >= 3, s >= t, m < n.
  void validate() const;
};

/// Samples from M_{m,n,s,t}: a uniform stub matching made simple by uniform
/// double-edge swaps, then mixed with burn_in_factor*|E| extra swaps.
/// Signs are i.i.d. uniform +/-1. Deterministic given the seed.
SignedBiregularMatrix sample_biregular(const EnsembleParams& params, int burn_in_factor = 10);

/// Samples just the graph (no signs); same algorithm, useful for tests.
BipartiteGraph sample_biregular_graph(const EnsembleParams& params, int burn_in_factor = 10);

}  // namespace spreadlab
