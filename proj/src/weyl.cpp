#include "ranktwo/weyl.hpp"

#include <algorithm>

namespace ranktwo {

Complex weyl_eval(const CMatrix& a, const CVector& u, const CVector& w, Complex z) {
  CMatrix shifted(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      shifted(i, j) = (i == j ? z : Complex(0)) - a(i, j);
  CVector x;
  try {
    x = solve_linear(shifted, u);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix)
      fail(ErrorCode::PoleHit, "weyl_eval: z is on the spectrum");
    throw;
  }
  return inner(x, w);
}

Complex weyl_eval(const CMatrix& a, const CVector& u, Complex z) {
  return weyl_eval(a, u, u, z);
}

Complex WeylPartialFractions::eval(Complex z) const {
  Complex s = 0;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    Complex d = z - poles[j];
    if (std::abs(d) < 1e-14 * (1.0 + std::abs(z)))
      fail(ErrorCode::PoleHit, "partial fraction evaluated at a pole");
    s += weights[j] / d;
  }
  return s;
}

WeylPartialFractions weyl_partial_fractions(const CMatrix& a, const CVector& u,
                                            const CVector& w) {
  EigenSystem sys = eigen_system(a);
  std::size_t n = sys.values.size();
  double spread = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      spread = std::max(spread, std::abs(sys.values[i] - sys.values[j]));
  spread = std::max(spread, 1e-30);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(sys.values[i] - sys.values[j]) <=
          tol::eig_simple_gap_rel * spread)
        fail(ErrorCode::DegenerateSpectrum,
             "partial fractions need simple eigenvalues");

  // A = X diag X^{-1};  Q_{u,w}(z) = sum_j (w^* x_j) (X^{-1}u)_j / (z - l_j).
  CVector xinv_u = solve_linear(sys.vectors, u);
  WeylPartialFractions pf;
  pf.poles = sys.values;
  pf.weights.resize(n);
  pf.generic = true;
  for (std::size_t j = 0; j < n; ++j) {
    CVector xj(n);
    for (std::size_t i = 0; i < n; ++i) xj[i] = sys.vectors(i, j);
    pf.weights[j] = inner(xj, w) * xinv_u[j];
    if (std::abs(pf.weights[j]) <= tol::genericity) pf.generic = false;
  }
  return pf;
}

Complex moment(const CMatrix& a, const CVector& u) {
  return inner(u, a * u);  // <u, Au> = (Au)^* u
}

double identity_qau_u_residual(const CMatrix& a, const CVector& u, Complex z) {
  CVector au = a * u;
  Complex lhs = weyl_eval(a, au, u, z);
  Complex rhs = z * weyl_eval(a, u, z) - 1.0;
  return std::abs(lhs - rhs);
}

double identity_qau_residual(const CMatrix& a, const CVector& u, Complex z) {
  if (!is_hermitian(a)) fail(ErrorCode::NotSelfAdjoint, "A must be self-adjoint");
  CVector au = a * u;
  Complex m = moment(a, u);
  Complex lhs = weyl_eval(a, au, au, z);
  Complex rhs = z * z * weyl_eval(a, u, z) - z - m;
  return std::abs(lhs - rhs);
}

}  // namespace ranktwo
