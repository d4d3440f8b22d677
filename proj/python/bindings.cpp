#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abqlab/dimension_bounds.hpp"
#include "abqlab/quadric_lab.hpp"
#include "abqlab/report.hpp"
#include "abqlab/sym2_decomp.hpp"
#include "abqlab/theta.hpp"

namespace py = pybind11;
using namespace abq;

namespace {

// Runs a verification and returns the JSON report text.
std::string verify(int n, std::uint64_t seed, int samples, double tolerance, const std::string& precision,
                   std::optional<Eigen::Matrix2cd> omega) {
  RunConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.tolerance = tolerance;
  const auto p = parse_precision(precision);
  if (!p) throw std::invalid_argument("precision must be 'double' or 'extended'");
  cfg.precision = *p;
  std::optional<PeriodMatrix> fixed;
  if (omega) fixed = PeriodMatrix::create(n, *omega);
  VerificationRun run;
  {
    py::gil_scoped_release release;
    run = run_verification(n, cfg.lab_config(), fixed);
  }
  return format_report_json(make_document(cfg, run));
}

py::dict resolve(int n) {
  const auto r = resolve_ideal_dimensions(n);
  py::dict out;
  out["status"] = to_string(r.status);
  std::vector<std::array<int, 4>> tuples(r.tuples.begin(), r.tuples.end());
  out["tuples"] = tuples;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quadrics through (1,n)-polarized abelian surfaces";

  py::register_exception<IndeterminateRankError>(m, "IndeterminateRankError", PyExc_RuntimeError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);
  py::register_exception<TailCertificationError>(m, "TailCertificationError", PyExc_RuntimeError);

  m.def("possible_k", &possible_k, py::arg("n"));
  m.def("kb_bounds", &kb_bounds, py::arg("d"));
  m.def("predicted_k", &predicted_k, py::arg("n"));
  m.def("resolve", &resolve, py::arg("n"), "Admissible (I0+, I0-, I1+, I1-) tuples and the resolver status.");
  m.def("family_multiplicities", &family_multiplicities, py::arg("n"));
  m.def("component_dimensions", [](int n) {
    std::vector<int> dims;
    for (const auto& c : families(n)) dims.push_back(c.dimension());
    return dims;
  }, py::arg("n"));
  m.def("decompose_table", &format_decompose_table, py::arg("n"));
  m.def("bounds_table", &format_bounds_table, py::arg("start"), py::arg("stop"));

  m.def("sample_period_matrix", [](int n, std::uint64_t seed) { return sample_period_matrix(n, seed).omega; },
        py::arg("n"), py::arg("seed"));
  m.def("theta", [](int n, const Eigen::Matrix2cd& omega, const Eigen::Vector2cd& z, double target_tail) {
    return Eigen::VectorXcd(theta_basis(PeriodMatrix::create(n, omega), z, target_tail).values);
  }, py::arg("n"), py::arg("omega"), py::arg("z"), py::arg("target_tail") = 1e-13);

  m.def("verify_json", &verify, py::arg("n"), py::arg("seed") = 1, py::arg("samples") = 0,
        py::arg("tolerance") = 1e-9, py::arg("precision") = "double", py::arg("omega") = py::none());
}
