#pragma once

#include "ranktwo/common.hpp"

namespace ranktwo {

/// Complex polynomial by coefficient list, ascending degree.
/// Trailing near-zero coefficients are stripped on construction with a
/// relative tolerance; the zero polynomial is coeffs() == {0}.
class CPoly {
 public:
  CPoly() : coeffs_{Complex(0)} {}
  explicit CPoly(CVector coeffs, double strip_rel = tol::poly_strip_rel);

  static CPoly constant(Complex c) { return CPoly(CVector{c}); }
  /// Monic (z - r0)(z - r1)... from a root list.
  static CPoly from_roots(const CVector& roots);

  const CVector& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex(0); }
  Complex leading() const { return coeffs_.back(); }

  Complex eval(Complex z) const;  // Horner
  CPoly derivative() const;

  /// Largest coefficient magnitude; the scale used by strip tolerances.
  double scale() const;

 private:
  CVector coeffs_;
};

CPoly operator+(const CPoly& a, const CPoly& b);
CPoly operator-(const CPoly& a, const CPoly& b);
CPoly operator*(const CPoly& a, const CPoly& b);
CPoly operator*(Complex a, const CPoly& p);

/// Long division a = q*b + r. Remainder is returned unstripped so callers can
/// check how exact the division was.
struct PolyDivision {
  CPoly quotient;
  CVector remainder;
  double remainder_norm;  // max |coeff| of the remainder
};
PolyDivision divide(const CPoly& a, const CPoly& b);

}  // namespace ranktwo
