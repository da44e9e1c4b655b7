#pragma once

#include "ranktwo/linalg.hpp"

namespace ranktwo {

/// Q_{u,w}(z) = <(z-A)^{-1} u, w> = w^* (z-A)^{-1} u, by a direct resolvent
/// solve. Throws PoleHit when z sits on the spectrum (singular solve).
Complex weyl_eval(const CMatrix& a, const CVector& u, const CVector& w, Complex z);

/// Q_u(z) = Q_{u,u}(z).
Complex weyl_eval(const CMatrix& a, const CVector& u, Complex z);

/// Partial-fraction representation sum_j c_j / (z - lambda_j).
/// For self-adjoint A and w == u the weights are real, nonnegative and sum
/// to |u|^2.
struct WeylPartialFractions {
  CVector poles;
  CVector weights;
  bool generic;  // all |c_j| above tol::genericity
  Complex eval(Complex z) const;
};

/// Requires simple eigenvalues (min gap > tol::eig_simple_gap_rel * spread);
/// throws DegenerateSpectrum otherwise.
WeylPartialFractions weyl_partial_fractions(const CMatrix& a, const CVector& u,
                                            const CVector& w);

/// m = <u, Au>. Real for self-adjoint A.
Complex moment(const CMatrix& a, const CVector& u);

/// |Q_{Au,u}(z) - (z Q_u(z) - 1)| for unit u.
double identity_qau_u_residual(const CMatrix& a, const CVector& u, Complex z);

/// |Q_{Au}(z) - (z^2 Q_u(z) - z - m)| for self-adjoint A and unit u.
/// Throws NotSelfAdjoint.
double identity_qau_residual(const CMatrix& a, const CVector& u, Complex z);

}  // namespace ranktwo
