#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "spreadlab/attack.hpp"
#include "spreadlab/ensemble.hpp"
#include "spreadlab/graph_analysis.hpp"
#include "spreadlab/rip.hpp"
#include "spreadlab/spectral.hpp"
#include "spreadlab/spread.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace spreadlab;

int worker_count() {
  if (const char* env = std::getenv("SPREADLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct EnsembleFlags {
  int n = 0, m = 0, s = 0, t = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd, bool required_n = true) {
    auto* n_opt = cmd->add_option("--n", n, "left vertices / columns");
    auto* s_opt = cmd->add_option("--s", s, "row sparsity (right degree)");
    if (required_n) {
      n_opt->required();
      s_opt->required();
    }
    cmd->add_option("--m", m, "right vertices / rows");
    cmd->add_option("--t", t, "column sparsity (left degree)");
    cmd->add_option("--alpha", alpha, "aspect ratio m/n = t/s (alternative to --m/--t)");
    cmd->add_option("--seed", seed, "RNG seed");
  }

  EnsembleParams resolve(int n_override = 0) const {
    EnsembleParams p;
    p.n = n_override > 0 ? n_override : n;
    p.s = s;
    p.seed = seed;
    if (alpha > 0.0) {
      const double traw = alpha * s;
      const int ti = static_cast<int>(std::lround(traw));
      if (std::abs(traw - ti) > 1e-9 || ti < 3)
        throw InvalidParams("alpha*s = " + std::to_string(traw) +
                            " is not an integer >= 3; nearest realizable alpha = " +
                            std::to_string(static_cast<double>(std::max(3, ti)) / s));
      p.t = ti;
      if (static_cast<std::int64_t>(p.n) * ti % s != 0)
        throw InvalidParams("n*t not divisible by s; pick n a multiple of " +
                            std::to_string(s / std::gcd(s, ti)));
      p.m = static_cast<int>(static_cast<std::int64_t>(p.n) * ti / s);
    } else {
      p.m = m;
      p.t = t;
    }
    p.validate();
    return p;
  }

  json to_json(const EnsembleParams& p) const {
    return json{{"n", p.n}, {"m", p.m}, {"s", p.s}, {"t", p.t}, {"seed", p.seed}};
  }
};

void emit_report(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw FileFormat("cannot open report path: " + out_path);
    os << j.dump(2) << "\n";
  }
}

json base_report(const std::string& subcommand, const json& config) {
  return json{{"version", kVersion}, {"subcommand", subcommand}, {"config", config}};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spreadlab: spread / RIP experiments on sparse biregular matrices"};
  app.require_subcommand(1);

  // ---- sample ----
  auto* sample_cmd = app.add_subcommand("sample", "sample a matrix and write it out");
  EnsembleFlags sample_flags;
  sample_flags.add_to(sample_cmd);
  std::string sample_out;
  sample_cmd->add_option("--out", sample_out, "output BIREG path")->required();
  std::string sample_report;
  sample_cmd->add_option("--report", sample_report, "JSON report path (default stdout)");

  // ---- attack ----
  auto* attack_cmd = app.add_subcommand("attack", "run the l2-compressibility attack");
  EnsembleFlags attack_flags;
  attack_flags.add_to(attack_cmd, false);
  std::string attack_matrix;
  attack_cmd->add_option("--matrix", attack_matrix, "BIREG file instead of sampling");
  int attack_radius = 6;
  attack_cmd->add_option("--max-radius", attack_radius, "largest ell to try");
  double attack_tol = 1e-10;
  attack_cmd->add_option("--tol", attack_tol, "kernel projection tolerance");
  int attack_candidates = 1;
  attack_cmd->add_option("--candidates", attack_candidates,
                         "roots to try (0 = scale-aware max(16, n/64))");
  std::string attack_report;
  attack_cmd->add_option("--report", attack_report, "JSON report path (default stdout)");

  // ---- spectrum ----
  auto* spectrum_cmd = app.add_subcommand("spectrum", "extreme singular values");
  EnsembleFlags spectrum_flags;
  spectrum_flags.add_to(spectrum_cmd, false);
  std::string spectrum_matrix;
  spectrum_cmd->add_option("--matrix", spectrum_matrix, "BIREG file instead of sampling");
  std::string spectrum_method = "dense";
  spectrum_cmd->add_option("--method", spectrum_method, "dense | iterative")
      ->check(CLI::IsMember({"dense", "iterative"}));
  std::string spectrum_report;
  spectrum_cmd->add_option("--report", spectrum_report, "JSON report path (default stdout)");

  // ---- rip-check ----
  auto* rip_cmd = app.add_subcommand("rip-check", "expansion-based certificate plus probe");
  EnsembleFlags rip_flags;
  rip_flags.add_to(rip_cmd, false);
  std::string rip_matrix;
  rip_cmd->add_option("--matrix", rip_matrix, "BIREG file instead of sampling");
  double rip_p = 1.0;
  rip_cmd->add_option("--p", rip_p, "norm exponent in [1,2)")->required();
  int rip_k = 1;
  rip_cmd->add_option("--k", rip_k, "sparsity to certify/probe")->required();
  std::string rip_mode = "exhaustive";
  rip_cmd->add_option("--mode", rip_mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  double rip_eps = 0.5;
  rip_cmd->add_option("--eps", rip_eps, "target RIP epsilon");
  std::int64_t rip_budget = 2000000;
  rip_cmd->add_option("--budget", rip_budget, "enumeration/sampling budget");
  std::string rip_report;
  rip_cmd->add_option("--report", rip_report, "JSON report path (default stdout)");

  // ---- spread-check ----
  auto* spread_cmd = app.add_subcommand("spread-check", "attack witness + spread recheck");
  EnsembleFlags spread_flags;
  spread_flags.add_to(spread_cmd, false);
  std::string spread_matrix;
  spread_cmd->add_option("--matrix", spread_matrix, "BIREG file instead of sampling");
  double spread_p = 2.0;
  spread_cmd->add_option("--p", spread_p, "norm exponent");
  double spread_eps = 0.0;
  spread_cmd->add_option("--eps", spread_eps, "spread threshold to test against");
  std::string spread_report;
  spread_cmd->add_option("--report", spread_report, "JSON report path (default stdout)");

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "seed sweeps with CSV output");
  std::string sweep_kind;
  sweep_cmd->add_option("kind", sweep_kind, "attack | spectrum")
      ->required()
      ->check(CLI::IsMember({"attack", "spectrum"}));
  std::vector<int> sweep_ns;
  sweep_cmd->add_option("--n", sweep_ns, "comma-separated sizes")->required()->delimiter(',');
  int sweep_seeds = 10;
  sweep_cmd->add_option("--seeds", sweep_seeds, "seeds per size");
  EnsembleFlags sweep_flags;
  sweep_cmd->add_option("--s", sweep_flags.s, "row sparsity")->required();
  sweep_cmd->add_option("--alpha", sweep_flags.alpha, "aspect ratio m/n");
  sweep_cmd->add_option("--t", sweep_flags.t, "column sparsity");
  std::string sweep_out;
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default stdout)");
  std::string sweep_report;
  sweep_cmd->add_option("--report", sweep_report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (*sample_cmd) {
      const EnsembleParams p = sample_flags.resolve();
      const SignedBiregularMatrix a = sample_biregular(p);
      write_bireg_file(sample_out, a);
      json rep = base_report("sample", sample_flags.to_json(p));
      rep["out"] = sample_out;
      rep["edges"] = a.graph.edges.size();
      emit_report(rep, sample_report);
    } else if (*attack_cmd) {
      SignedBiregularMatrix a;
      json config;
      std::uint64_t seed = 0;
      if (!attack_matrix.empty()) {
        a = read_bireg_file(attack_matrix);
        config = json{{"matrix", attack_matrix}};
      } else {
        const EnsembleParams p = attack_flags.resolve();
        a = sample_biregular(p);
        config = attack_flags.to_json(p);
        seed = p.seed;
      }
      config["max_radius"] = attack_radius;
      config["tol"] = attack_tol;
      const CompressibleWitness w = attack(a, attack_radius, attack_tol, attack_candidates);
      json rep = base_report("attack", config);
      rep["witness"] = json::parse(w.to_json(a.n(), a.m(), a.s, a.t, seed));
      emit_report(rep, attack_report);
    } else if (*spectrum_cmd) {
      SignedBiregularMatrix a;
      json config;
      if (!spectrum_matrix.empty()) {
        a = read_bireg_file(spectrum_matrix);
        config = json{{"matrix", spectrum_matrix}};
      } else {
        const EnsembleParams p = spectrum_flags.resolve();
        a = sample_biregular(p);
        config = spectrum_flags.to_json(p);
      }
      config["method"] = spectrum_method;
      const SpectrumReport rep0 = singular_extremes(
          a, spectrum_method == "dense" ? SpectralMethod::dense : SpectralMethod::iterative);
      json rep = base_report("spectrum", config);
      rep.update(json::parse(rep0.to_json()));
      emit_report(rep, spectrum_report);
    } else if (*rip_cmd) {
      SignedBiregularMatrix a;
      json config;
      if (!rip_matrix.empty()) {
        a = read_bireg_file(rip_matrix);
        config = json{{"matrix", rip_matrix}};
      } else {
        const EnsembleParams p = rip_flags.resolve();
        a = sample_biregular(p);
        config = rip_flags.to_json(p);
      }
      config["p"] = rip_p;
      config["k"] = rip_k;
      config["mode"] = rip_mode;
      config["eps"] = rip_eps;
      json rep = base_report("rip-check", config);

      const double gamma = static_cast<double>(rip_k) / a.n();
      std::optional<RipCertificate> cert;
      try {
        const ExpansionCertificate ec = verify_unique_expansion(
            a.graph, a.t, gamma, 1.0, ExpansionMode::exhaustive, rip_budget);
        cert = certify_rip(ec, a.t, a.s, rip_p, rip_eps);
        rep["certificate"] = json::parse(cert->to_json());
      } catch (const Error& e) {
        rep["certificate_error"] = e.what();
      }
      const RipProbe probe =
          probe_rip(a, rip_p, rip_k,
                    rip_mode == "exhaustive" ? ExpansionMode::exhaustive : ExpansionMode::sampled,
                    rip_budget);
      rep["probe"] = json::parse(probe.to_json());
      json violations = json::array();
      if (cert) {
        const double lo = cert->K * (1.0 - cert->epsilon);
        const double hi = cert->K * (1.0 + cert->epsilon);
        if (probe.min_ratio < lo - 1e-9)
          violations.push_back({{"kind", "min_ratio_below_bound"},
                                {"observed", probe.min_ratio},
                                {"bound", lo}});
        if (probe.max_ratio > hi + 1e-9)
          violations.push_back({{"kind", "max_ratio_above_bound"},
                                {"observed", probe.max_ratio},
                                {"bound", hi}});
      }
      rep["violations"] = violations;
      emit_report(rep, rip_report);
    } else if (*spread_cmd) {
      SignedBiregularMatrix a;
      json config;
      std::uint64_t seed = 0;
      if (!spread_matrix.empty()) {
        a = read_bireg_file(spread_matrix);
        config = json{{"matrix", spread_matrix}};
      } else {
        const EnsembleParams p = spread_flags.resolve();
        a = sample_biregular(p);
        config = spread_flags.to_json(p);
        seed = p.seed;
      }
      config["p"] = spread_p;
      config["eps"] = spread_eps;
      const CompressibleWitness w = attack(a, 6, 1e-10, 1);
      const KSparseError rechecked = best_k_sparse_error(w.y, w.k, spread_p);
      json rep = base_report("spread-check", config);
      rep["witness"] = json::parse(w.to_json(a.n(), a.m(), a.s, a.t, seed));
      rep["recheck"] = {{"best_k_sparse_error", rechecked.error},
                       {"compressible_at_eps", rechecked.error <= spread_eps}};
      emit_report(rep, spread_report);
    } else if (*sweep_cmd) {
      struct Row {
        int n, m, s, t;
        std::uint64_t seed;
        double value;
      };
      std::vector<std::pair<int, std::uint64_t>> tasks;
      for (int n : sweep_ns)
        for (int seed = 0; seed < sweep_seeds; ++seed)
          tasks.emplace_back(n, static_cast<std::uint64_t>(seed));

      std::vector<Row> rows(tasks.size());
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      const int workers = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
      std::mutex err_mutex;
      std::string first_error;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
              EnsembleFlags f = sweep_flags;
              f.seed = tasks[i].second;
              const EnsembleParams p = f.resolve(tasks[i].first);
              const SignedBiregularMatrix a = sample_biregular(p);
              double value = 0.0;
              if (sweep_kind == "attack") {
                value = attack(a, 6, 1e-10, 1).epsilon;
              } else {
                value = singular_extremes(a, SpectralMethod::iterative).slack;
              }
              rows[i] = {p.n, p.m, p.s, p.t, p.seed, value};
            } catch (const std::exception& e) {
              std::lock_guard<std::mutex> lock(err_mutex);
              if (first_error.empty()) first_error = e.what();
              return;
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      if (!first_error.empty()) throw Error(first_error);

      const std::string metric = sweep_kind == "attack" ? "epsilon" : "slack";
      std::ostringstream csv;
      csv << "n,m,s,t,seed,metric,value\n";
      for (const auto& r : rows)
        csv << r.n << ',' << r.m << ',' << r.s << ',' << r.t << ',' << r.seed << ',' << metric
            << ',' << std::setprecision(17) << r.value << '\n';
      if (sweep_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream os(sweep_out);
        if (!os) throw FileFormat("cannot open CSV path: " + sweep_out);
        os << csv.str();
      }
      if (!sweep_report.empty()) {
        json rep = base_report("sweep", {{"kind", sweep_kind},
                                         {"n", sweep_ns},
                                         {"seeds", sweep_seeds},
                                         {"s", sweep_flags.s},
                                         {"alpha", sweep_flags.alpha},
                                         {"t", sweep_flags.t}});
        json medians = json::object();
        for (int n : sweep_ns) {
          std::vector<double> vals;
          for (const auto& r : rows)
            if (r.n == n) vals.push_back(r.value);
          medians[std::to_string(n)] = median(vals);
        }
        rep["median_" + metric] = medians;
        emit_report(rep, sweep_report);
      }
    }
  } catch (const InvalidParams& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const FileFormat& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << json{{"error", "budget"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "numerical"}, {"message", e.what()}}.dump() << "\n";
    return 4;
  }
  return 0;
}
