#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spreadlab/attack.hpp"
#include "spreadlab/ensemble.hpp"
#include "spreadlab/graph_analysis.hpp"
#include "spreadlab/rip.hpp"
#include "spreadlab/spectral.hpp"
#include "spreadlab/spread.hpp"

namespace py = pybind11;
using namespace spreadlab;

PYBIND11_MODULE(_spreadlab, m) {
  m.doc() = "spread / RIP experiments on sparse biregular matrices";

  py::register_exception<Error>(m, "SpreadlabError");

  py::class_<EnsembleParams>(m, "EnsembleParams")
      .def(py::init([](int n, int mm, int s, int t, std::uint64_t seed) {
             EnsembleParams p{n, mm, s, t, seed};
             p.validate();
             return p;
           }),
           py::arg("n"), py::arg("m"), py::arg("s"), py::arg("t"), py::arg("seed") = 0)
      .def_readonly("n", &EnsembleParams::n)
      .def_readonly("m", &EnsembleParams::m)
      .def_readonly("s", &EnsembleParams::s)
      .def_readonly("t", &EnsembleParams::t)
      .def_readonly("seed", &EnsembleParams::seed);

  py::class_<SignedBiregularMatrix>(m, "SignedBiregularMatrix")
      .def_property_readonly("n", &SignedBiregularMatrix::n)
      .def_property_readonly("m", &SignedBiregularMatrix::m)
      .def_readonly("s", &SignedBiregularMatrix::s)
      .def_readonly("t", &SignedBiregularMatrix::t)
      .def("apply",
           [](const SignedBiregularMatrix& a, const Eigen::VectorXd& x) { return a.apply(x); })
      .def("apply_transpose", &SignedBiregularMatrix::apply_transpose)
      .def("dense", &SignedBiregularMatrix::dense)
      .def("sign_of", &SignedBiregularMatrix::sign_of);

  m.def("sample_biregular",
        [](const EnsembleParams& p) { return sample_biregular(p); }, py::arg("params"));
  m.def("read_bireg", &read_bireg_file, py::arg("path"));
  m.def("write_bireg", &write_bireg_file, py::arg("path"), py::arg("matrix"));

  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("sigma_min", &SpectrumReport::sigma_min)
      .def_readonly("sigma_max", &SpectrumReport::sigma_max)
      .def_readonly("slack", &SpectrumReport::slack)
      .def_readonly("method", &SpectrumReport::method);
  m.def(
      "singular_extremes",
      [](const SignedBiregularMatrix& a, const std::string& method) {
        return singular_extremes(
            a, method == "dense" ? SpectralMethod::dense : SpectralMethod::iterative);
      },
      py::arg("matrix"), py::arg("method") = "dense");

  py::class_<CompressibleWitness>(m, "CompressibleWitness")
      .def_readonly("y", &CompressibleWitness::y)
      .def_readonly("k", &CompressibleWitness::k)
      .def_readonly("epsilon", &CompressibleWitness::epsilon)
      .def_readonly("residual", &CompressibleWitness::residual)
      .def_readonly("ell", &CompressibleWitness::ell)
      .def_readonly("distortion_lower_bound", &CompressibleWitness::distortion_lower_bound);
  m.def(
      "attack",
      [](const SignedBiregularMatrix& a, int max_radius, double tol, int candidates) {
        return attack(a, max_radius, tol, candidates);
      },
      py::arg("matrix"), py::arg("max_radius") = 6, py::arg("tol") = 1e-10,
      py::arg("candidates") = 1);

  m.def(
      "best_k_sparse_error",
      [](const Eigen::VectorXd& x, int k, double p) {
        const KSparseError e = best_k_sparse_error(x, k, p);
        return py::make_tuple(e.error, e.support);
      },
      py::arg("x"), py::arg("k"), py::arg("p") = 2.0);
  m.def(
      "distortion",
      [](const Eigen::VectorXd& x, double q, double p) { return distortion(x, q, p).value; },
      py::arg("x"), py::arg("q"), py::arg("p"));
  m.def("rip_to_spread_params", &rip_to_spread_params, py::arg("k"), py::arg("eps"), py::arg("p"),
        py::arg("n"));

  py::class_<ExpansionCertificate>(m, "ExpansionCertificate")
      .def_readonly("gamma", &ExpansionCertificate::gamma)
      .def_readonly("mu", &ExpansionCertificate::mu)
      .def_readonly("mode", &ExpansionCertificate::mode)
      .def_readonly("max_set_size_checked", &ExpansionCertificate::max_set_size_checked)
      .def_readonly("counterexample", &ExpansionCertificate::counterexample)
      .def("to_json", &ExpansionCertificate::to_json);
  m.def(
      "verify_unique_expansion",
      [](const SignedBiregularMatrix& a, double gamma, double mu, const std::string& mode,
         std::int64_t budget, std::uint64_t seed) {
        return verify_unique_expansion(
            a.graph, a.t, gamma, mu,
            mode == "exhaustive" ? ExpansionMode::exhaustive : ExpansionMode::sampled, budget,
            seed);
      },
      py::arg("matrix"), py::arg("gamma"), py::arg("mu"), py::arg("mode") = "exhaustive",
      py::arg("budget") = 1000000, py::arg("seed") = 0);

  py::class_<RipCertificate>(m, "RipCertificate")
      .def_readonly("p", &RipCertificate::p)
      .def_readonly("k", &RipCertificate::k)
      .def_readonly("epsilon", &RipCertificate::epsilon)
      .def_readonly("K", &RipCertificate::K)
      .def("to_json", &RipCertificate::to_json);
  m.def(
      "certify_rip",
      [](const ExpansionCertificate& cert, int t, int s_max, double p, double eps) {
        return certify_rip(cert, t, s_max, p, eps);
      },
      py::arg("expansion_certificate"), py::arg("t"), py::arg("s_max"), py::arg("p"),
      py::arg("eps"));

  py::class_<RipProbe>(m, "RipProbe")
      .def_readonly("p", &RipProbe::p)
      .def_readonly("k", &RipProbe::k)
      .def_readonly("min_ratio", &RipProbe::min_ratio)
      .def_readonly("max_ratio", &RipProbe::max_ratio)
      .def_readonly("mode", &RipProbe::mode);
  m.def(
      "probe_rip",
      [](const SignedBiregularMatrix& a, double p, int k, const std::string& mode,
         std::int64_t budget, int restarts, std::uint64_t seed) {
        return probe_rip(a, p, k,
                         mode == "exhaustive" ? ExpansionMode::exhaustive : ExpansionMode::sampled,
                         budget, restarts, seed);
      },
      py::arg("matrix"), py::arg("p"), py::arg("k"), py::arg("mode") = "exhaustive",
      py::arg("budget") = 1000000, py::arg("restarts") = 64, py::arg("seed") = 0);
}
