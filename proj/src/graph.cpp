#include "spreadlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spreadlab {

void BipartiteGraph::add_edge(int u, int r) { edges.emplace_back(u, r); }

void BipartiteGraph::finalize() {
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) {
      throw FileFormat("duplicate edge (" + std::to_string(edges[i].first) + "," +
                       std::to_string(edges[i].second) + ")");
    }
  }
  left_adj.assign(n_left, {});
  right_adj.assign(n_right, {});
  for (const auto& [u, r] : edges) {
    if (u < 0 || u >= n_left || r < 0 || r >= n_right) {
      throw FileFormat("edge endpoint out of range: (" + std::to_string(u) + "," +
                       std::to_string(r) + ")");
    }
    left_adj[u].push_back(r);
    right_adj[r].push_back(u);
  }
}

bool BipartiteGraph::is_left_regular(int t) const {
  for (const auto& adj : left_adj)
    if (static_cast<int>(adj.size()) != t) return false;
  return true;
}

bool BipartiteGraph::is_biregular(int t, int s) const {
  if (!is_left_regular(t)) return false;
  for (const auto& adj : right_adj)
    if (static_cast<int>(adj.size()) != s) return false;
  return true;
}

int BipartiteGraph::max_right_degree() const {
  int d = 0;
  for (const auto& adj : right_adj) d = std::max<int>(d, adj.size());
  return d;
}

bool BipartiteGraph::is_simple() const {
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void SparseVector::set(int i, double v) {
  if (i < 0 || i >= dim) throw DimensionMismatch("sparse index out of range");
  if (!entries.empty() && entries.back().first >= i)
    throw InvalidParams("sparse indices must be strictly increasing");
  if (v != 0.0) entries.emplace_back(i, v);
}

Eigen::VectorXd SparseVector::dense() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (const auto& [i, x] : entries) v[i] = x;
  return v;
}

double SparseVector::norm(double p) const {
  if (entries.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [i, x] : entries) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<double> terms;
  terms.reserve(entries.size());
  for (const auto& [i, x] : entries) terms.push_back(std::pow(std::abs(x), p));
  return std::pow(pairwise_sum(terms.data(), terms.size()), 1.0 / p);
}

SignedBiregularMatrix SignedBiregularMatrix::from_graph(const BipartiteGraph& g,
                                                        const std::vector<int>& signs, int t,
                                                        int s) {
  if (signs.size() != g.edges.size())
    throw DimensionMismatch("sign count does not match edge count");
  if (!g.is_biregular(t, s)) throw InvalidParams("graph is not (t,s)-biregular");
  SignedBiregularMatrix a;
  a.graph = g;
  a.t = t;
  a.s = s;
  a.cols.assign(g.n_left, {});
  a.rows.assign(g.n_right, {});
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [u, r] = g.edges[i];
    const int sg = signs[i];
    if (sg != 1 && sg != -1) throw InvalidParams("signs must be +1 or -1");
    a.cols[u].emplace_back(r, sg);
    a.rows[r].emplace_back(u, sg);
  }
  return a;
}

SignedBiregularMatrix SignedBiregularMatrix::unsigned_adjacency(const BipartiteGraph& g, int t) {
  if (!g.is_left_regular(t)) throw InvalidParams("graph is not t-left-regular");
  SignedBiregularMatrix a;
  a.graph = g;
  a.t = t;
  a.s = g.max_right_degree();
  a.cols.assign(g.n_left, {});
  a.rows.assign(g.n_right, {});
  for (const auto& [u, r] : g.edges) {
    a.cols[u].emplace_back(r, 1);
    a.rows[r].emplace_back(u, 1);
  }
  return a;
}

int SignedBiregularMatrix::sign_of(int u, int r) const {
  for (const auto& [rr, sg] : cols[u])
    if (rr == r) return sg;
  return 0;
}

Eigen::VectorXd SignedBiregularMatrix::apply(const Eigen::VectorXd& x) const {
  if (x.size() != n()) throw DimensionMismatch("apply: vector length != n");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m());
  for (int r = 0; r < m(); ++r) {
    double acc = 0.0;
    for (const auto& [u, sg] : rows[r]) acc += sg * x[u];
    out[r] = acc;
  }
  return out;
}

Eigen::VectorXd SignedBiregularMatrix::apply(const SparseVector& x) const {
  if (x.dim != n()) throw DimensionMismatch("apply: sparse vector dim != n");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m());
  for (const auto& [u, v] : x.entries)
    for (const auto& [r, sg] : cols[u]) out[r] += sg * v;
  return out;
}

Eigen::VectorXd SignedBiregularMatrix::apply_transpose(const Eigen::VectorXd& z) const {
  if (z.size() != m()) throw DimensionMismatch("apply_transpose: vector length != m");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n());
  for (int u = 0; u < n(); ++u) {
    double acc = 0.0;
    for (const auto& [r, sg] : cols[u]) acc += sg * z[r];
    out[u] = acc;
  }
  return out;
}

Eigen::MatrixXd SignedBiregularMatrix::dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m(), n());
  for (int u = 0; u < n(); ++u)
    for (const auto& [r, sg] : cols[u]) d(r, u) = sg;
  return d;
}

void write_bireg(std::ostream& os, const SignedBiregularMatrix& a) {
  os << "BIREG " << a.n() << ' ' << a.m() << ' ' << a.s << ' ' << a.t << '\n';
  for (int u = 0; u < a.n(); ++u) {
    // cols is built from edges sorted by (u, r), so this order is canonical
    for (const auto& [r, sg] : a.cols[u]) os << u << ' ' << r << ' ' << (sg > 0 ? "+1" : "-1") << '\n';
  }
}

SignedBiregularMatrix read_bireg(std::istream& is) {
  std::string magic;
  int n, m, s, t;
  if (!(is >> magic >> n >> m >> s >> t) || magic != "BIREG")
    throw FileFormat("expected BIREG header");
  BipartiteGraph g(n, m);
  std::vector<int> signs;
  int u, r, sg;
  while (is >> u >> r >> sg) {
    g.add_edge(u, r);
    signs.push_back(sg);
  }
  if (!is.eof() && is.fail()) {
    is.clear();
    std::string tok;
    is >> tok;
    throw FileFormat("bad token in BIREG body: " + tok);
  }
  // add_edge preserves input order; finalize() sorts, so reorder signs alongside
  std::vector<std::size_t> perm(g.edges.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  auto edges_copy = g.edges;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return edges_copy[a] < edges_copy[b]; });
  std::vector<int> sorted_signs(signs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) sorted_signs[i] = signs[perm[i]];
  g.finalize();
  return SignedBiregularMatrix::from_graph(g, sorted_signs, t, s);
}

void write_bireg_file(const std::string& path, const SignedBiregularMatrix& a) {
  std::ofstream os(path);
  if (!os) throw FileFormat("cannot open for writing: " + path);
  write_bireg(os, a);
}

SignedBiregularMatrix read_bireg_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FileFormat("cannot open: " + path);
  return read_bireg(is);
}

void write_bigraph(std::ostream& os, const BipartiteGraph& g) {
  os << "BIGRAPH " << g.n_left << ' ' << g.n_right << '\n';
  auto sorted = g.edges;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [u, r] : sorted) os << u << ' ' << r << '\n';
}

BipartiteGraph read_bigraph(std::istream& is) {
  std::string magic;
  int n, m;
  if (!(is >> magic >> n >> m) || magic != "BIGRAPH")
    throw FileFormat("expected BIGRAPH header");
  BipartiteGraph g(n, m);
  int u, r;
  while (is >> u >> r) g.add_edge(u, r);
  g.finalize();
  return g;
}

BipartiteGraph read_bigraph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FileFormat("cannot open: " + path);
  return read_bigraph(is);
}

void write_bigraph_file(const std::string& path, const BipartiteGraph& g) {
  std::ofstream os(path);
  if (!os) throw FileFormat("cannot open for writing: " + path);
  write_bigraph(os, g);
}

double pairwise_sum(const double* data, std::size_t len) {
  if (len == 0) return 0.0;
  if (len <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = len / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, len - half);
}

double pairwise_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  std::vector<double> prods(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) prods[i] = a[i] * b[i];
  return pairwise_sum(prods.data(), prods.size());
}

}  // namespace spreadlab
