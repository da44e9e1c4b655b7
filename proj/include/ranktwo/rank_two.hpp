#pragma once


#include "ranktwo/weyl.hpp"

namespace ranktwo {

/// A - s u w^* - t g h^*. The two named shapes fix the vector pattern from a
/// single u: antidiagonal is A - s u(Au)^* - t (Au)u^*, diagonal is
/// A - s u u^* - t (Au)(Au)^*.
enum class PerturbationShape { General, Antidiagonal, Diagonal };

struct Rank2Perturbation {
  CMatrix a;
  CVector u, w, g, h;
  Complex s = 0, t = 0;
  PerturbationShape shape = PerturbationShape::General;

  static Rank2Perturbation general(CMatrix a, CVector u, CVector w, CVector g,
                                   CVector h, Complex s, Complex t);
  static Rank2Perturbation antidiagonal(CMatrix a, CVector u, Complex s, Complex t);
  static Rank2Perturbation diagonal(CMatrix a, CVector u, Complex s, Complex t);

  std::size_t dim() const { return a.rows(); }
};

/// The perturbed matrix itself.
CMatrix materialize(const Rank2Perturbation& p);

/// det(z-A) R_{s,t}(z) with
/// R_{s,t} = 1 + s Q_{u,w} + t Q_{g,h} + st Q_{u,w}Q_{g,h} - st Q_{g,w}Q_{u,h},
/// assembled as an exact polynomial of degree n via the adjugate forms.
CPoly perturbed_char_poly(const Rank2Perturbation& p);

/// q(z) = det(z-A) (Q_{u,w}Q_{g,h} - Q_{g,w}Q_{u,h}); degree n-2 for generic
/// vectors. Throws DegenerateDirections when identically zero.
struct LimitPolynomial {
  CPoly q;
  CVector roots;
  bool simple;  // all roots separated beyond the cluster tolerance
};
LimitPolynomial limit_polynomial_q(const Rank2Perturbation& p);

/// Large-parameter spectrum of A - (alpha r) u w^* - (beta r) g h^* as
/// r -> +inf: two eigenvalues diverge like r * lambda_i, the rest approach
/// the roots of q.
struct AsymptoticSpectrum {
  CVector divergent;      // eigenvalues of alpha u w^* + beta g h^*
  CVector finite_limits;  // roots of q
  bool degenerate;        // rank(alpha u w^* + beta g h^*) < 2 numerically
};
AsymptoticSpectrum asymptotic_spectrum(const Rank2Perturbation& p, Complex alpha,
                                       Complex beta);

// Closed-form perturbed Weyl functions; each evaluates Q of the unperturbed A
// and applies the corresponding algebraic identity.
Complex weyl_rank2_general(const CMatrix& a, const CVector& u, const CVector& w,
                           const CVector& g, const CVector& h, Complex s,
                           Complex t, Complex z);
/// Antidiagonal pair shape A - s u w^* - t w u^*, arbitrary w.
Complex weyl_tilde(const CMatrix& a, const CVector& u, const CVector& w, Complex s,
                   Complex t, Complex z);
/// Diagonal pair shape A - s u u^* - t w w^*, arbitrary w.
Complex weyl_hat(const CMatrix& a, const CVector& u, const CVector& w, Complex s,
                 Complex t, Complex z);
/// Self-adjoint antidiagonal (w = Au):  1/Q = (1-s)(1-t)/Q_u + (s+t-st)z + stm.
Complex weyl_tilde_selfadjoint(Complex q_u, Complex m, Complex s, Complex t,
                               Complex z);
/// Self-adjoint diagonal (w = Au):
/// 1/Q = s + (1 + t(z^2 Q_u - m - z)) / ((1 - tm + tz) Q_u - t).
Complex weyl_hat_selfadjoint(Complex q_u, Complex m, Complex s, Complex t,
                             Complex z);

/// Dispatches on the shape tag, using the self-adjoint forms when A = A^*.
Complex weyl_perturbed(const Rank2Perturbation& p, Complex z);

/// Sufficient interlacing test for A = A^* and the antidiagonal w = Au shape
/// with real s, t: applies iff x0 = stm/(st-s-t) falls outside [min l, max l].
struct InterlacingCondition {
  bool applies;
  double x0;
  double lambda_min, lambda_max;
  double m;
  bool generic;  // all partial-fraction weights nonzero
};
InterlacingCondition interlacing_condition(const CMatrix& a, const CVector& u,
                                           double s, double t);

/// True iff both sorted lists are simple and strictly alternate when merged.
/// Throws ComplexSpectrum / DegenerateSpectrum on ties within tol::interlace_tie.
bool verify_interlacing(std::vector<double> spectrum_a,
                        std::vector<double> spectrum_b);

/// Small-s eigenvalue splitting at an eigenvalue lambda0 carrying a Jordan
/// chain of length two, for A - s(u w^* + g h^*). The two eigenvalues move
/// like lambda0 +- sqrt(split_coefficient) * sqrt(s); they stay on the
/// lambda0 axis direction iff Re(split_coefficient) <= tolerance.
struct PhaseTransitionResult {
  bool stays_on_axis;
  bool degenerate;             // split coefficient is numerically zero
  Complex split_coefficient;   // extrapolated (-eps^2)(Q_uw + Q_gh)(lambda0 + eps)
  double direct_test_im_ratio; // |Im Q(l0 +- i eps)| / |Q| (realness probe)
};
PhaseTransitionResult phase_transition_check(
    const CMatrix& a, const CVector& u, const CVector& w, const CVector& g,
    const CVector& h, Complex lambda0,
    const std::vector<double>& eps_seq = {1e-3, 1e-4, 1e-5});

}  // namespace ranktwo
