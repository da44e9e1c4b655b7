#pragma once

#include <functional>
#include <optional>

#include "ranktwo/common.hpp"

namespace ranktwo {

struct Atom {
  double location;
  double mass;
};

/// Jacobi (tridiagonal) coefficients: diagonal a_n, off-diagonal b_n > 0.
/// Finite vectors describe a finitely supported measure; set `tail_constant`
/// when the coefficients continue with a_tail, b_tail forever.
struct JacobiData {
  std::vector<double> a;
  std::vector<double> b;
  bool tail_constant = false;
  double a_tail = 0.0;
  double b_tail = 1.0;
};

struct AcPart {
  double support_lo = 0.0, support_hi = 0.0;
  std::function<double(double)> density;  // zero outside the support
};

/// Probability measure on R: finitely many atoms, an optional absolutely
/// continuous part, optional Jacobi coefficients, and an optional closed-form
/// Cauchy transform. The richest available representation drives evaluation.
struct SpectralMeasure {
  std::vector<Atom> atoms;
  std::optional<AcPart> ac;
  std::optional<JacobiData> jacobi;
  std::function<Complex(Complex)> closed_form;  // Cauchy transform, C+ -> C-
  double first_moment = 0.0;

  static SpectralMeasure delta(double a);
  static SpectralMeasure bernoulli();  // (delta_{-1} + delta_{+1}) / 2
  static SpectralMeasure wigner();
  static SpectralMeasure from_atoms(std::vector<Atom> atoms);
  static SpectralMeasure from_jacobi(JacobiData jacobi);
};

/// Wigner semicircle Cauchy transform (z - z sqrt(1 - 4/z^2))/2, branch with
/// G in the closed lower half-plane; extends through R \ [-2,2].
Complex cauchy_wigner(Complex z);

/// Cauchy transform of a measure at z with Im z > 0 (closed forms extend to
/// real z off the support). Throws UnsupportedRegion / PoleHit.
Complex cauchy_eval(const SpectralMeasure& mu, Complex z);

/// Evaluable Cauchy transform of a (possibly transformed) measure.
class CauchyTransform {
 public:
  CauchyTransform() = default;
  explicit CauchyTransform(SpectralMeasure mu);

  Complex operator()(Complex z) const;
  double first_moment() const { return moment_; }
  const std::optional<SpectralMeasure>& measure() const { return measure_; }

  static CauchyTransform from_function(std::function<Complex(Complex)> f,
                                       double first_moment);

 private:
  std::optional<SpectralMeasure> measure_;
  std::function<Complex(Complex)> fn_;
  double moment_ = 0.0;
};

/// U-transform: 1/G_out = q/G + (1-q) z + (q-p) m, q >= 0. Structured routes
/// (Jacobi coefficient map a0 -> p a0, b0^2 -> q b0^2; single atom -> delta_{pm})
/// are used when the input representation allows, the defining equation
/// otherwise. Throws InvalidParams for q < 0.
CauchyTransform u_transform(const CauchyTransform& g, double p, double q);

/// t-transform: the U-transform with p = q = tau.
CauchyTransform t_transform(const CauchyTransform& g, double tau);

/// W-transform: 1/G_out = s + (1 + t (z^2 G - m - z)) / ((1 - t m + t z) G - t).
/// Jacobi inputs go through the deformed-matrix model (exact for finite
/// Jacobi data); otherwise the defining equation is evaluated pointwise.
CauchyTransform w_transform(const CauchyTransform& g, double s, double t);

/// Tridiagonal matrix with possibly different super/sub diagonals (the corner
/// of the antidiagonal deformation is not symmetric when s != t).
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> sub;

  /// <(z - J)^{-1} e_0, e_0> by elimination from the tail (UL solve).
  Complex resolvent_e0(Complex z) const;
};

/// Corner map [(1-s-t)a0, (1-s)b0; (1-t)b0, a1, ...], truncated at n.
TridiagonalOperator jacobi_deform_antidiagonal(const JacobiData& j, double s,
                                               double t, int n);
/// Corner map [m(1-tm)-s, b0(1-tm); b0(1-tm), a1 - t b0^2, ...], m = a0.
TridiagonalOperator jacobi_deform_diagonal(const JacobiData& j, double s, double t,
                                           int n);

/// Plain truncation (no deformation).
TridiagonalOperator jacobi_truncate(const JacobiData& j, int n);

/// Stieltjes inversion on a grid: density(x) = -(1/pi) Im G(x + i eps)
/// extrapolated over the tail of the schedule; atoms detected where
/// eps |Im G| stabilizes to a nonzero limit and refined by local maximization.
struct StieltjesResult {
  std::vector<double> grid;
  std::vector<double> density;
  std::vector<uint8_t> flagged;  // nonconvergent extrapolation marks
  std::vector<Atom> atoms;
};
StieltjesResult stieltjes_invert(const std::function<Complex(Complex)>& g,
                                 const std::vector<double>& grid,
                                 std::vector<double> eps_schedule = {1e-3, 1e-5,
                                                                     1e-7},
                                 double atom_window_lo = -12.0,
                                 double atom_window_hi = 12.0);

/// Residue-style mass estimate at a known pole location.
double atom_mass_at(const std::function<Complex(Complex)>& g, double location);

}  // namespace ranktwo
