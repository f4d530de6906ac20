// Copyright 2026 The qmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qmix/dynamics.hpp"
#include "qmix/io.hpp"
#include "qmix/scenario.hpp"

namespace py = pybind11;
using namespace qmix;

namespace {

// Reports round-trip through the same JSON writer the CLI uses, so python
// callers see exactly the documented schema.
py::object json_to_python(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

CDensity as_complex_density(const CMatrix& m, double tol) { return CDensity::validate(m, tol); }

}  // namespace

PYBIND11_MODULE(_qmix, m) {
  m.doc() = "Quaternionic density matrices, projections and mixtures";

  static py::exception<Error> qmix_error(m, "QmixError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(qmix_error.ptr())(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(qmix_error.ptr(), instance.ptr());
    }
  });

  py::class_<QMatrix>(m, "QMatrix")
      .def(py::init<CMatrix, CMatrix>(), py::arg("alpha"), py::arg("beta"))
      .def(py::init<CMatrix>(), py::arg("alpha"))
      .def_static("identity", &QMatrix::identity)
      .def_property_readonly("alpha", &QMatrix::alpha)
      .def_property_readonly("beta", &QMatrix::beta)
      .def_property_readonly("shape", [](const QMatrix& q) { return py::make_tuple(q.rows(), q.cols()); })
      .def("adjoint", &QMatrix::adjoint)
      .def("__matmul__", [](const QMatrix& a, const QMatrix& b) { return matmul(a, b); })
      .def("__add__", [](const QMatrix& a, const QMatrix& b) { return a + b; })
      .def("__sub__", [](const QMatrix& a, const QMatrix& b) { return a - b; })
      .def("__mul__", [](const QMatrix& a, double s) { return a * s; })
      .def("__rmul__", [](const QMatrix& a, double s) { return s * a; })
      .def("__repr__", [](const QMatrix& q) {
        return "<QMatrix " + std::to_string(q.rows()) + "x" + std::to_string(q.cols()) + ">";
      });

  m.def("chi", [](const QMatrix& q) { return chi(q).mat; });
  m.def("chi_inverse", [](const CMatrix& c, double tol) { return chi_inverse({c}, tol); }, py::arg("c"),
        py::arg("tol") = 1e-10);
  m.def("eigvals", &eigvals_hermitian, py::arg("m"), py::arg("herm_tol") = 1e-10);
  m.def("rank", &rank_q, py::arg("m"), py::arg("rel_tol") = py::none());
  m.def("expm", &expm_q);
  m.def("real_trace", &real_trace);
  m.def("is_hermitian", &is_hermitian, py::arg("m"), py::arg("tol") = 1e-10);

  py::class_<QDensity>(m, "QDensity")
      .def_property_readonly("mat", &QDensity::mat)
      .def_property_readonly("classification",
                             [](const QDensity& d) { return std::string(to_string(d.classification())); })
      .def_property_readonly("is_proper", &QDensity::is_proper)
      .def_property_readonly("beta_norm", &QDensity::beta_norm)
      .def_property_readonly("dim", &QDensity::dim);

  m.def("validate", &validate, py::arg("m"), py::arg("tol") = 1e-10);
  m.def("project", [](const QDensity& d) { return complex_projection(d).mat(); });
  m.def("classify", [](const QDensity& d) { return std::string(to_string(classify(d))); });
  m.def(
      "expectation",
      [](const QMatrix& a, const QDensity& rho, double tol) { return expectation(Observable(a, tol), rho); },
      py::arg("observable"), py::arg("rho"), py::arg("tol") = 1e-10);
  m.def("discriminator", [](const QDensity& d) { return discriminator(d).mat(); });
  m.def(
      "lift", [](const CMatrix& a, Index rank, double tol) { return lift(as_complex_density(a, tol), rank); },
      py::arg("rho_alpha"), py::arg("rank"), py::arg("tol") = 1e-10);
  m.def(
      "purify", [](const CMatrix& a, double tol) { return purify(as_complex_density(a, tol)); },
      py::arg("rho_alpha"), py::arg("tol") = 1e-10);
  m.def("block_purify", &block_purify, py::arg("u"), py::arg("v"), py::arg("cu"), py::arg("cv"));
  m.def(
      "random_density",
      [](Index n, const std::string& kind, std::uint64_t seed) {
        DensityKind k;
        if (kind == "proper") k = DensityKind::Proper;
        else if (kind == "improper") k = DensityKind::Improper;
        else if (kind == "pure") k = DensityKind::PureQ;
        else throw Error(ErrorKind::InvalidArgument, "kind must be proper, improper or pure");
        return random_density(n, k, seed);
      },
      py::arg("n"), py::arg("kind"), py::arg("seed"));

  py::class_<Generator>(m, "Generator")
      .def(py::init<QMatrix, double>(), py::arg("h"), py::arg("tol") = 1e-10)
      .def(py::init<std::vector<QMatrix>, double, double>(), py::arg("samples"), py::arg("span"),
           py::arg("tol") = 1e-10)
      .def("at", &Generator::at)
      .def_property_readonly("is_constant", &Generator::is_constant);

  m.def(
      "evolve", [](const QDensity& rho, const QMatrix& u) { return evolve(rho, Propagator(u, 0.0, 1.0)); },
      py::arg("rho"), py::arg("u"));
  m.def(
      "projected_evolution",
      [](const QDensity& rho, const QMatrix& u) { return projected_evolution(rho, Propagator(u, 0.0, 1.0)).mat(); },
      py::arg("rho"), py::arg("u"));
  m.def(
      "integrate",
      [](const QDensity& rho, const Generator& gen, double t, Index steps) {
        return integrate(rho, gen, t, steps).state;
      },
      py::arg("rho"), py::arg("gen"), py::arg("t"), py::arg("steps"));
  m.def(
      "time_ordered", [](const Generator& gen, double t, Index steps) { return time_ordered(gen, t, steps).u(); },
      py::arg("gen"), py::arg("t"), py::arg("steps"));
  m.def("partition_leak", &partition_leak, py::arg("rho"), py::arg("gen"), py::arg("t") = 1.0);

  m.def("kron", py::overload_cast<const CMatrix&, const CMatrix&>(&kron));
  m.def(
      "partial_trace",
      [](const CMatrix& rho, Index n1, Index n2, int over) {
        if (over != 1 && over != 2) throw Error(ErrorKind::InvalidArgument, "over must be 1 or 2");
        return partial_trace(rho, n1, n2, over == 1 ? Subsystem::First : Subsystem::Second).mat();
      },
      py::arg("rho"), py::arg("n1"), py::arg("n2"), py::arg("over"));
  m.def(
      "lueders",
      [](const CMatrix& rho, std::vector<CMatrix> projectors) {
        return lueders_nonselective(CDensity::validate(rho), ProjectorFamily(std::move(projectors))).mat();
      },
      py::arg("rho"), py::arg("projectors"));
  m.def(
      "schmidt",
      [](const CVector& psi, Index n1, Index n2) {
        const BipartiteState state = schmidt(BipartiteState(n1, n2, psi));
        py::list out;
        for (const SchmidtTerm& t : *state.schmidt_terms()) {
          out.append(py::make_tuple(t.weight, t.left, t.right));
        }
        return out;
      },
      py::arg("psi"), py::arg("n1"), py::arg("n2"));

  m.def(
      "run_scenario",
      [](complex cp, complex cm, double theta, double phi) {
        return json_to_python(io::to_json(run_scenario(cp, cm, {theta, phi})));
      },
      py::arg("c_plus"), py::arg("c_minus"), py::arg("theta") = 0.0, py::arg("phi") = 0.0);
  m.def(
      "check_propositions",
      [](Index n_max, Index trials, std::uint64_t seed) {
        return json_to_python(io::to_json(check_propositions(n_max, trials, seed)));
      },
      py::arg("n_max"), py::arg("trials"), py::arg("seed"));

  m.def("serialize_matrix", &io::serialize_matrix);
  m.def("parse_matrix", [](const std::string& text) { return io::parse_matrix(text); });
}
