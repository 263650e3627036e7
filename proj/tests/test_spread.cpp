#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "spreadlab/spread.hpp"

using namespace spreadlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exhaustive oracle: minimum relative l_p error over all C(n,k) supports.
double oracle_k_sparse_error(const Eigen::VectorXd& x, int k, double p) {
  const int n = static_cast<int>(x.size());
  double best = kInf;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Eigen::VectorXd rest = x;
    for (int i : idx) rest[i] = 0.0;
    best = std::min(best, lp_norm(rest, p));
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best / lp_norm(x, p);
}

}  // namespace

TEST_CASE("lp_norm agrees with Eigen and direct sums") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::VectorXd x = testhelp::random_vector(13, rng);
    CHECK(lp_norm(x, 1.0) == doctest::Approx(x.lpNorm<1>()).epsilon(1e-13));
    CHECK(lp_norm(x, 2.0) == doctest::Approx(x.norm()).epsilon(1e-13));
    CHECK(lp_norm(x, kInf) == doctest::Approx(x.lpNorm<Eigen::Infinity>()));
    double s = 0;
    for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), 1.7);
    CHECK(lp_norm(x, 1.7) == doctest::Approx(std::pow(s, 1.0 / 1.7)).epsilon(1e-13));
  }
}

TEST_CASE("best_k_sparse_error hand values") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(5);
  e1[0] = 1.0;
  const KSparseError a = best_k_sparse_error(e1, 1, 2.0);
  CHECK(a.error == 0.0);
  CHECK(a.support == std::vector<int>{0});

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(4);
  CHECK(best_k_sparse_error(ones, 1, 2.0).error ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

  CHECK_THROWS_AS(best_k_sparse_error(Eigen::VectorXd::Zero(4), 1, 2.0), ZeroVector);
}

TEST_CASE("best_k_sparse_error equals exhaustive support minimization") {
  std::mt19937_64 rng(2);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (int rep = 0; rep < 25; ++rep) {
      const int n = 6 + static_cast<int>(rng() % 7);  // 6..12
      const int k = 1 + static_cast<int>(rng() % 4);
      const Eigen::VectorXd x = testhelp::random_vector(n, rng);
      CHECK(best_k_sparse_error(x, k, p).error ==
            doctest::Approx(oracle_k_sparse_error(x, k, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("distortion hand values and range") {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(9);
  CHECK(distortion(ones, 1.0, 2.0).value == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(16);
  e1[0] = -2.5;
  CHECK(distortion(e1, 1.0, 2.0).value == doctest::Approx(4.0).epsilon(1e-14));

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 8;
    const Eigen::VectorXd x = testhelp::random_vector(n, rng);
    for (auto [q, p] : std::vector<std::pair<double, double>>{
             {1.0, 2.0}, {1.0, 1.5}, {1.5, 2.0}, {1.0, kInf}, {2.0, kInf}}) {
      const double d = distortion(x, q, p).value;
      const double cap = std::pow(n, 1.0 / q - (std::isinf(p) ? 0.0 : 1.0 / p));
      CHECK(d >= 1.0 - 1e-12);
      CHECK(d <= cap + 1e-12);
    }
  }
  CHECK_THROWS_AS(distortion(ones, 2.0, 2.0), InvalidParams);
}

TEST_CASE("Hoelder sandwich for q < p") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const Eigen::VectorXd x = testhelp::random_vector(n, rng);
    for (auto [q, p] :
         std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.5, 3.0}, {2.0, kInf}}) {
      const double np = lp_norm(x, p), nq = lp_norm(x, q);
      const double scale = std::pow(n, 1.0 / q - (std::isinf(p) ? 0.0 : 1.0 / p));
      CHECK(np <= nq * (1 + 1e-12));
      CHECK(nq <= np * scale * (1 + 1e-12));
    }
  }
}

TEST_CASE("compressibility to distortion lower bound (literal inequality)") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 6 + static_cast<int>(rng() % 11);
    const Eigen::VectorXd x = testhelp::random_vector(n, rng);
    for (auto [q, p] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.0, 1.5}}) {
      for (int k = 1; k <= n / 2; ++k) {
        const double eps = best_k_sparse_error(x, k, p).error;
        const double bound = compressible_to_distortion_bound(k, n, eps, q, p);
        CHECK(distortion(x, q, p).value >= bound - 1e-9);
      }
    }
  }
}

TEST_CASE("distortion to compressibility (literal inequality)") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 10;
    const Eigen::VectorXd x = testhelp::random_vector(n, rng);
    for (auto [q, p] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.5, 2.0}}) {
      for (int k = 1; k <= 5; ++k) {
        CHECK(best_k_sparse_error(x, k, p).error <=
              distortion_to_compressibility(x, k, q, p) + 1e-9);
      }
    }
  }
}

TEST_CASE("rip_to_spread_params formula values") {
  // eps -> 0 limit is 1/2
  CHECK(rip_to_spread_params(4, 1e-12, 2.0, 64) == doctest::Approx(0.5).epsilon(1e-9));
  // p = 1: (1-eps)/(2+2 eps)
  CHECK(rip_to_spread_params(4, 0.3, 1.0, 64) ==
        doctest::Approx(0.7 / 2.6).epsilon(1e-13));
  // k = n/2, p = 2, eps = 0.25 -> 0.75 / (2 + 0.25 * (1 + 2)) = 3/11
  CHECK(rip_to_spread_params(32, 0.25, 2.0, 64) ==
        doctest::Approx(0.75 / 2.75).epsilon(1e-13));
}

TEST_CASE("p_spread_to_q_spread formula and the spread implication") {
  CHECK(p_spread_to_q_spread(8, 1.0, 2.0, 1.0, 8) == doctest::Approx(1.0));
  CHECK(p_spread_to_q_spread(4, 0.5, 2.0, 1.0, 64) == doctest::Approx(0.015625).epsilon(1e-13));
  // nonincreasing in 1/q
  CHECK(p_spread_to_q_spread(4, 0.5, 2.0, 1.0, 64) <=
        p_spread_to_q_spread(4, 0.5, 2.0, 1.5, 64) + 1e-15);

  // literal implication: x (2k, eps)-l_p-spread => (k, eps^2 (k/n)^{1/q})-l_q-spread
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 8 + static_cast<int>(rng() % 9);
    const Eigen::VectorXd x = testhelp::random_vector(n, rng);
    for (double p : {1.5, 2.0}) {
      for (double q : {1.0, 1.2}) {
        if (q >= p) continue;
        for (int k = 1; 2 * k <= n / 2; ++k) {
          const double eps = best_k_sparse_error(x, 2 * k, p).error;
          const double eps_q = p_spread_to_q_spread(k, eps, p, q, n);
          CHECK(best_k_sparse_error(x, k, q).error >= eps_q - 1e-9);
        }
      }
    }
  }
}
