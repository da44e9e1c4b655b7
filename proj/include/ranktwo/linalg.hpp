#pragma once

#include "ranktwo/matrix.hpp"
#include "ranktwo/poly.hpp"

namespace ranktwo {

/// Partial-pivot LU solve of M x = b. Pivot tolerance: tol::pivot_rel times
/// the largest row norm of M. Throws SingularMatrix below it.
CVector solve_linear(const CMatrix& m, const CVector& b);

CMatrix inverse(const CMatrix& m);

/// All n eigenvalues with multiplicity via Hessenberg reduction + shifted
/// complex QR. Throws NoConvergence past the iteration cap.
CVector eigenvalues_dense(const CMatrix& m);

/// Eigenvalues sorted ascending by real part, asserted real.
/// Throws NotSelfAdjoint / ComplexSpectrum.
std::vector<double> eigenvalues_hermitian(const CMatrix& m);

/// Eigenvalues plus right eigenvectors (inverse iteration) and the
/// coordinates of a general decomposition A = X diag(values) X^{-1}.
struct EigenSystem {
  CVector values;
  CMatrix vectors;  // columns are unit right eigenvectors
};
EigenSystem eigen_system(const CMatrix& m);

/// det(z I - M), coefficients ascending, exact up to rounding
/// (Faddeev-LeVerrier).
CPoly char_poly(const CMatrix& m);

/// Faddeev-LeVerrier byproduct: adj(z I - M) = sum_k B_k z^k, so that
/// y^* adj(zI - M) x  =  det(zI - M) * <(zI-M)^{-1} x, y>  as polynomials.
struct CharSystem {
  CPoly det;                    // det(zI - M)
  std::vector<CMatrix> adjugate;  // adjugate[k] is the z^k matrix coefficient
};
CharSystem char_system(const CMatrix& m);

/// y^* adj(zI - M) x as a polynomial in z, from a precomputed CharSystem.
CPoly adjugate_form(const CharSystem& cs, const CVector& x, const CVector& y);

/// Adjugate algebra in the scaled variable z' = z / rho with rho ~ |A|. The
/// monomial basis is only well conditioned near unit scale, so all polynomial
/// assembly happens on A/rho and results are mapped back by homogeneity.
struct ScaledAdjugate {
  double rho = 1.0;
  CharSystem cs;  // char_system(A / rho)

  static ScaledAdjugate make(const CMatrix& a);
  CPoly form(const CVector& x, const CVector& y) const;  // scaled-basis P'
};

/// rho^homogeneity * p(z / rho): coefficient k picks up rho^(homogeneity - k).
CPoly unscale_poly(const CPoly& p, double rho, int homogeneity);

/// Singular values (descending) via Gram-matrix eigenvalues.
std::vector<double> singular_values(const CMatrix& m);

/// Greedy nearest-neighbor matching of two equal-size complex multisets;
/// returns the largest matched distance. The root-matching oracle helper.
double match_distance(CVector a, CVector b);

}  // namespace ranktwo
