// Python bridge: the main certification operations, exchanging documents as
// JSON strings. The steercert package wraps these with dict interfaces.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <string>

#include "steercert/certify.hpp"
#include "steercert/json_io.hpp"

namespace py = pybind11;
using namespace steercert;

namespace {

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError("$", std::string("invalid JSON: ") + e.what());
  }
}

SolveOptions make_options(double tol, int max_iter, std::uint64_t seed, double tol_t) {
  SolveOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  options.seed = seed;
  options.tol_t = tol_t;
  return options;
}

std::string check_jm_json(const std::string& measurements, double tol, int max_iter,
                          std::uint64_t seed, double tol_t) {
  const MeasurementAssemblage ma = measurement_assemblage_from_json(parse_document(measurements));
  return to_json(check_joint_measurability(ma, make_options(tol, max_iter, seed, tol_t))).dump();
}

std::string check_steering_json(const std::string& assemblage, double tol, int max_iter,
                                std::uint64_t seed, double tol_t) {
  const Assemblage a = assemblage_from_json(parse_document(assemblage));
  return to_json(check_lhs(a, make_options(tol, max_iter, seed, tol_t))).dump();
}

std::string check_channel_json(const std::string& input, double tol, int max_iter,
                               std::uint64_t seed, double tol_t) {
  const ChannelAssemblage ca = channel_steering_input_from_json(parse_document(input));
  return to_json(check_channel_unsteerable(ca, make_options(tol, max_iter, seed, tol_t))).dump();
}

std::string theorem_json(const std::string& input, double tol, int max_iter, std::uint64_t seed,
                         double tol_t) {
  const TheoremInput in = theorem_input_from_json(parse_document(input));
  return to_json(
             theorem_harness(in.measurements, in.extensions, make_options(tol, max_iter, seed, tol_t)))
      .dump();
}

std::string white_noise_mix_json(const std::string& measurements, double t) {
  const MeasurementAssemblage ma = measurement_assemblage_from_json(parse_document(measurements));
  return to_json(white_noise_mix(ma, t)).dump();
}

std::string constant_psiplus_extension_json(int d, int dim_c) {
  return to_json(constant_psiplus_extension(d, dim_c)).dump();
}

}  // namespace

PYBIND11_MODULE(_steercert, m) {
  m.doc() = "Certification of joint measurability and steering (JSON-string core)";
  m.attr("__version__") = "0.1.0";

  py::register_exception<JsonError>(m, "JsonError", PyExc_ValueError);

  m.def("check_joint_measurability_json", &check_jm_json, py::arg("measurements"),
        py::arg("tol") = kSolverTol, py::arg("max_iter") = kSolverMaxIter, py::arg("seed") = 0,
        py::arg("tol_t") = kBisectionTolT,
        "Decide joint measurability of a measurement-assemblage document.");
  m.def("check_steering_json", &check_steering_json, py::arg("assemblage"),
        py::arg("tol") = kSolverTol, py::arg("max_iter") = kSolverMaxIter, py::arg("seed") = 0,
        py::arg("tol_t") = kBisectionTolT,
        "Decide whether a state assemblage admits a hidden-state model.");
  m.def("check_channel_json", &check_channel_json, py::arg("input"), py::arg("tol") = kSolverTol,
        py::arg("max_iter") = kSolverMaxIter, py::arg("seed") = 0,
        py::arg("tol_t") = kBisectionTolT,
        "Decide channel steerability from a channel assemblage or an "
        "{extension, measurements} document.");
  m.def("theorem_json", &theorem_json, py::arg("input"), py::arg("tol") = kSolverTol,
        py::arg("max_iter") = kSolverMaxIter, py::arg("seed") = 0,
        py::arg("tol_t") = kBisectionTolT,
        "Cross-check joint measurability against channel steering for the given extensions.");
  m.def("white_noise_mix_json", &white_noise_mix_json, py::arg("measurements"), py::arg("t"),
        "Mix every POVM element with white noise: (1-t) M + t tr(M) I/dim.");
  m.def("constant_psiplus_extension_json", &constant_psiplus_extension_json, py::arg("d"),
        py::arg("dim_c"),
        "Extension that ignores its input and outputs a maximally entangled pair.");
  m.def("busch_pair_margin", &busch_pair_margin, py::arg("eta1"), py::arg("axis1"),
        py::arg("eta2"), py::arg("axis2"),
        "Analytic compatibility margin for two noisy qubit observables "
        "(positive means jointly measurable).");
  m.def("busch_pair_oracle", &busch_pair_oracle, py::arg("eta1"), py::arg("axis1"),
        py::arg("eta2"), py::arg("axis2"),
        "Analytic compatibility decision for two noisy qubit observables.");
}
