#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ranktwo/meixner.hpp"
#include "ranktwo/rank_two.hpp"
#include "ranktwo/roots.hpp"
#include "ranktwo/singular_values.hpp"

namespace py = pybind11;
using namespace ranktwo;

namespace {

CMatrix to_matrix(const std::vector<std::vector<Complex>>& rows) {
  if (rows.empty()) throw py::value_error("empty matrix");
  CMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw py::value_error("ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rank2Perturbation make_perturbation(const std::vector<std::vector<Complex>>& a,
                                    const CVector& u, Complex s, Complex t,
                                    const std::string& shape) {
  CMatrix m = to_matrix(a);
  if (shape == "antidiagonal") return Rank2Perturbation::antidiagonal(m, u, s, t);
  if (shape == "diagonal") return Rank2Perturbation::diagonal(m, u, s, t);
  throw py::value_error("shape must be 'antidiagonal' or 'diagonal'");
}

}  // namespace

PYBIND11_MODULE(_ranktwo, m) {
  m.doc() = "rank-two matrix perturbations, singular-value asymptotics and "
            "spectral measure transforms";

  py::register_exception<Error>(m, "NumericalError");

  m.def("eigenvalues",
        [](const std::vector<std::vector<Complex>>& a) {
          return eigenvalues_dense(to_matrix(a));
        },
        py::arg("a"), "All eigenvalues of a dense complex matrix.");

  m.def("poly_roots",
        [](const CVector& coeffs) { return poly_roots(CPoly(coeffs)); },
        py::arg("coeffs"), "Roots of a polynomial, coefficients ascending.");

  m.def("perturbed_spectrum",
        [](const std::vector<std::vector<Complex>>& a, const CVector& u, Complex s,
           Complex t, const std::string& shape) {
          return poly_roots(
              perturbed_char_poly(make_perturbation(a, u, s, t, shape)));
        },
        py::arg("a"), py::arg("u"), py::arg("s"), py::arg("t"),
        py::arg("shape") = "antidiagonal",
        "Spectrum of the deformed matrix from the characteristic-polynomial "
        "factorization.");

  m.def("perturbed_spectrum_general",
        [](const std::vector<std::vector<Complex>>& a, const CVector& u,
           const CVector& w, const CVector& g, const CVector& h, Complex s,
           Complex t) {
          return poly_roots(perturbed_char_poly(
              Rank2Perturbation::general(to_matrix(a), u, w, g, h, s, t)));
        },
        py::arg("a"), py::arg("u"), py::arg("w"), py::arg("g"), py::arg("h"),
        py::arg("s"), py::arg("t"));

  m.def("weyl",
        [](const std::vector<std::vector<Complex>>& a, const CVector& u,
           const CVector& w, Complex z) { return weyl_eval(to_matrix(a), u, w, z); },
        py::arg("a"), py::arg("u"), py::arg("w"), py::arg("z"),
        "Q_{u,w}(z) = w* (z - A)^{-1} u.");

  m.def("interlacing",
        [](const std::vector<std::vector<Complex>>& a, const CVector& u, double s,
           double t) {
          InterlacingCondition c = interlacing_condition(to_matrix(a), u, s, t);
          return py::make_tuple(c.applies, c.x0);
        },
        py::arg("a"), py::arg("u"), py::arg("s"), py::arg("t"),
        "Sufficient interlacing test; returns (applies, x0).");

  m.def("verify_interlacing",
        [](std::vector<double> sa, std::vector<double> sb) {
          return verify_interlacing(std::move(sa), std::move(sb));
        },
        py::arg("spectrum_a"), py::arg("spectrum_b"));

  m.def("singular_value_limits",
        [](const std::vector<std::vector<Complex>>& b, const CVector& u,
           const CVector& v) {
          SVAsymptotics s =
              sv_limit_polynomial(SVPerturbation::make(to_matrix(b), u, v));
          return s.finite_limits;
        },
        py::arg("b"), py::arg("u"), py::arg("v"),
        "Large-tau limits sqrt(z_j) of the trailing singular values of "
        "B - tau v u*.");

  m.def("smallest_sv",
        [](const std::vector<std::vector<Complex>>& b, const CVector& u,
           const CVector& v) {
          SmallestSVAsymptotics s =
              smallest_sv_asymptotics(SVPerturbation::make(to_matrix(b), u, v));
          return py::make_tuple(s.vanishes, s.vanishes ? s.rate : s.limit);
        },
        py::arg("b"), py::arg("u"), py::arg("v"),
        "(vanishes, rate-or-limit) of sigma_n(B - tau v u*) as tau -> inf.");

  m.def("cauchy_wigner", &cauchy_wigner, py::arg("z"));

  m.def("u_transform_cauchy",
        [](double p, double q, Complex z) {
          return u_transform(CauchyTransform(SpectralMeasure::wigner()), p, q)(z);
        },
        py::arg("p"), py::arg("q"), py::arg("z"),
        "Cauchy transform of U^{p,q}(Wigner) at z.");

  m.def("w_transform_cauchy",
        [](double s, double t, Complex z) {
          return w_transform(CauchyTransform(SpectralMeasure::wigner()), s, t)(z);
        },
        py::arg("s"), py::arg("t"), py::arg("z"),
        "Cauchy transform of W^{s,t}(Wigner) at z.");

  m.def("density",
        [](const std::string& measure, const std::string& transform, double p1,
           double p2, const std::vector<double>& grid) {
          CauchyTransform g;
          if (measure == "wigner")
            g = CauchyTransform(SpectralMeasure::wigner());
          else if (measure == "bernoulli")
            g = CauchyTransform(SpectralMeasure::bernoulli());
          else
            throw py::value_error("measure must be 'wigner' or 'bernoulli'");
          if (transform == "u")
            g = u_transform(g, p1, p2);
          else if (transform == "t")
            g = t_transform(g, p1);
          else if (transform == "w")
            g = w_transform(g, p1, p2);
          else if (transform != "none")
            throw py::value_error("transform must be u|t|w|none");
          auto fn = [&g](Complex z) { return g(z); };
          StieltjesResult r = stieltjes_invert(fn, grid, {1e-5, 1e-7});
          return py::make_tuple(r.density, r.atoms.size());
        },
        py::arg("measure"), py::arg("transform"), py::arg("p1"), py::arg("p2"),
        py::arg("grid"),
        "Stieltjes-inverted density samples and the detected atom count.");

  m.def("meixner_classify",
        [](double gamma, double a, double b, double c) {
          MeixnerClassification cls = classify_atoms({gamma, a, b, c});
          return py::make_tuple(cls.atom_count, cls.atom_locations);
        },
        py::arg("gamma"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("meixner_density",
        [](double gamma, double a, double b, double c, double x) {
          return meixner_density({gamma, a, b, c}, x);
        },
        py::arg("gamma"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));

  m.def("meixner_u_map",
        [](double gamma, double a, double b, double c, double s, double t) {
          MappedMeixner mm = u_transform_params({gamma, a, b, c}, s, t);
          double out[4] = {mm.params.gamma, mm.params.a, mm.params.b, mm.params.c};
          if (mm.is_delta) {
            out[0] = mm.delta_location;
            out[1] = out[2] = out[3] = 0.0;
          }
          return py::make_tuple(bool(mm.is_delta), out[0], out[1], out[2], out[3]);
        },
        py::arg("gamma"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("s"),
        py::arg("t"));
}
