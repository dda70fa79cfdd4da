#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regint/cli.hpp"
#include "regint/lattice.hpp"
#include "regint/pairings.hpp"

namespace py = pybind11;
using namespace regint;

namespace {

EisensteinSpec spec(cplx s, int n, bool regularized) {
  EisensteinSpec e{s, n, regularized};
  validate(e);
  return e;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regularized integrals on the modular surface";

  m.def("lambda_laurent", [] {
    const auto& d = lambda_laurent_data();
    return py::dict(py::arg("residue") = d.residue, py::arg("ell") = d.ell, py::arg("m") = d.m);
  });
  m.def("lambda_F_deriv", &lambda_F_deriv, py::arg("k"), py::arg("u"));
  m.def("hecke_eigenvalue", &hecke_eigenvalue, py::arg("p"), py::arg("s"));

  m.def(
      "eisenstein",
      [](cplx z, cplx s, int n, bool regularized) {
        if (!(z.imag() > 0)) throw py::value_error("z must lie in the upper half plane");
        return eval_spec({z.real(), z.imag()}, spec(s, n, regularized));
      },
      py::arg("z"), py::arg("s"), py::arg("n") = 0, py::arg("regularized") = false);

  // factors: list of (s, n, regularized)
  m.def(
      "regularized_integral",
      [](const std::vector<std::tuple<cplx, int, bool>>& factors, double T) {
        std::vector<EisensteinSpec> specs;
        for (const auto& [s, n, r] : factors) specs.push_back(spec(s, n, r));
        const auto phi = specs.empty() ? sample_constant(1.0) : sample_product(specs);
        RegularizeOptions opts;
        opts.T = T;
        const auto r = Regularizer(phi, opts).integral();
        return py::dict(py::arg("principal") = r.principal, py::arg("degenerate") = r.degenerate,
                        py::arg("total") = r.total, py::arg("error_estimate") = r.diagnostics.contour_error);
      },
      py::arg("factors"), py::arg("T") = 12.0);

  m.def(
      "pairing",
      [](const std::string& mode, int n1, int n2) {
        PairingRequest req;
        if (mode == "unitary")
          req = unitary_request(n1, n2);
        else if (mode == "singular")
          req = singular_request(n1, n2);
        else
          throw py::value_error("mode must be 'unitary' or 'singular'");
        const auto f = pairing_formula(req);
        py::list terms;
        for (const auto& t : f.terms()) terms.append(py::make_tuple(t.weight.str(), t.monomial));
        return py::dict(py::arg("value") = f.value(), py::arg("terms") = terms,
                        py::arg("max_residual") = f.max_residual);
      },
      py::arg("mode"), py::arg("n1"), py::arg("n2"));

  m.def(
      "triple_product", [](int n) { return triple_product(n).value; }, py::arg("n") = 0);

  m.def(
      "coset_decompose",
      [](const std::string& matrix, long long level, bool minus) {
        const auto A = IntMatrix::parse(matrix);
        const auto t = minus ? coset_decompose_minus(A, level) : coset_decompose(A, level);
        return py::dict(py::arg("gamma") = t.gamma.to_rows(), py::arg("n_minus") = t.n_minus.to_rows(),
                        py::arg("n_plus") = t.n_plus.to_rows(), py::arg("ok") = check_triple(t, A).ok());
      },
      py::arg("matrix"), py::arg("level"), py::arg("minus") = false);

  m.def(
      "lattice_sum",
      [](long long d, long long ideal, double t, double c, double tail) {
        const auto s = lattice_sum(inverse_ideal_lattice(QuadField{d}, ideal), t, c, tail);
        return py::make_tuple(s.value, s.error);
      },
      py::arg("field"), py::arg("ideal"), py::arg("t"), py::arg("c") = 4.0, py::arg("tail") = 1e-8);

  m.def(
      "verify_json",
      [](const std::string& suite, std::uint64_t seed, int jobs) {
        py::gil_scoped_release nogil;
        return cli::run_suite(suite, seed, jobs).to_json().dump();
      },
      py::arg("suite"), py::arg("seed") = cli::kDefaultSeed, py::arg("jobs") = 1);
  m.attr("suites") = cli::suite_names();

  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);
}
