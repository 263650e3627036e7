#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/graph.hpp"
#include "spreadlab/graph_analysis.hpp"

namespace spreadlab {

struct RipCertificate {
  double p = 1.0;
  int k = 0;          // certified sparsity (= floor(gamma*n))
  double epsilon = 0.0;
  double K = 0.0;     // normalization t^{1/p}
  double delta1 = 0.0, delta2 = 0.0;
  double gamma = 0.0, mu = 0.0;  // from the source expansion certificate
  int t = 0, s_max = 0;

  std::string to_json() const;
};

struct RipProbe {
  double p = 1.0;
  int k = 0;
  double min_ratio = 0.0, max_ratio = 0.0;  // empirical extremes of ||Ax||_p/||x||_p
  std::string mode;                         // "exhaustive-support" or "sampled"

  std::string to_json() const;
};

/// Per-unit-||x||_p^p coefficients:
///   lower = t(1-mu)/(1+d1)^{p-1} - (mu t/d1^{p-1})(s_max-1)^{p-1}
///   upper = t/(1-d2)^{p-1} + (mu t/d2^{p-1})(s_max-1)^{p-1}
/// The lower coefficient may be <= 0; the caller decides usefulness.
std::pair<double, double> rip_bounds_from_expansion(int t, int s_max, double mu, double p,
                                                    double delta1, double delta2);

/// Golden-section helpers for tightening the free deltas (optional; the
/// certificate path always uses delta = eps/3).
double best_delta1(int t, int s_max, double mu, double p);
double best_delta2(int t, int s_max, double mu, double p);

/// RIP certificate from a verified unique-expansion certificate. Requires
/// eps^2 >= 9 mu s_max^{p-1} and p in [1, 2); sets delta1 = delta2 = eps/3
/// and K = t^{1/p}.
RipCertificate certify_rip(const ExpansionCertificate& cert, int t, int s_max, double p,
                           double eps);

/// Empirical extremes of ||Ax||_p/||x||_p over k-sparse x. Exhaustive mode
/// enumerates all size-k supports (C(n,k) <= budget); sampled mode draws
/// `budget` random supports. p = 2 is exact per support (SVD); other p use
/// multi-restart projected descent seeded with the coordinate vectors. Always
/// a probe, never a certificate.
RipProbe probe_rip(const SignedBiregularMatrix& a, double p, int k, ExpansionMode mode,
                   std::int64_t budget, int restarts = 64, std::uint64_t seed = 0);

struct PipelineResult {
  SignedBiregularMatrix matrix;  // 0/1 adjacency of the degree-bounded graph
  RipCertificate certificate;
  int spread_k = 0;
  double spread_eps = 0.0;  // via the RIP -> spread conversion
};

/// Degree-bound the supplied t-left-regular expander, exhaustively verify the
/// claimed (gamma, mu) unique expansion on the result, certify RIP, and
/// convert to spread parameters.
PipelineResult explicit_pipeline(const BipartiteGraph& g, int t, double gamma, double mu,
                                 double p, double eps, std::int64_t budget);

/// Lower bound c1 sqrt(t) (sqrt(t)/||A||_2)^{c2 log(gamma n)/log(1/mu)} on
/// ||Ax||_2/||x||_2 over gamma*n-sparse unit x. Hypotheses mu <= 2/9,
/// gamma <= 2*mu, gamma*n >= (1/mu)^c are checked.
double weak_l2_bound(int t, double gamma, double mu, int n, double a_opnorm,
                     double c1 = 0.35355339059327373,  // 1/(2 sqrt(2))
                     double c2 = 2.0, double c = 1.0);

/// T_i = U(union of S_j) intersect N(S_i) for pairwise-disjoint left sets S_i.
std::vector<std::vector<int>> disjoint_unique_neighbor_sets(
    const BipartiteGraph& g, const std::vector<std::vector<int>>& sets);

}  // namespace spreadlab
