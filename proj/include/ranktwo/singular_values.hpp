#pragma once

#include "ranktwo/linalg.hpp"

namespace ranktwo {

/// B - tau v u^* with unit u, v. (B - tau v u^*)^*(B - tau v u^*) is the rank
/// two perturbation B^*B - tau u w^* - tau (w - tau u) u^* with w = B^* v.
struct SVPerturbation {
  CMatrix b;
  CVector u, v;

  /// Validates norms and flags the B^* v parallel-to-u degenerate case.
  static SVPerturbation make(CMatrix b, CVector u, CVector v);

  bool scalar_multiple = false;  // B^* v parallel to u within tolerance
  CVector w;                     // B^* v
};

/// R_tau(x) det(x - B^*B) as a real-coefficient polynomial in x.
/// Throws ScalarMultipleCase when the flag is set.
CPoly gram_char_poly(const SVPerturbation& p, double tau);

/// Limit polynomial q(x) = (-Q_uu + Q_uw Q_wu - Q_ww Q_uu) det(x - B^*B),
/// of degree n-1, with nonnegative roots z_1 >= ... >= z_{n-1}; singular
/// values sigma_j(tau) -> sqrt(z_{j-1}) for j >= 2 while sigma_1 = tau + o(tau).
struct SVAsymptotics {
  CPoly q;
  std::vector<double> finite_limits;  // sqrt(z_j), descending
  double sigma1_at_zero;              // largest singular value of B
};
SVAsymptotics sv_limit_polynomial(const SVPerturbation& p);

/// Large-tau behavior of the smallest singular value of square invertible B.
struct SmallestSVAsymptotics {
  bool vanishes;       // u^* B^{-1} v == 0 branch
  double rate;         // vanishing: sigma_n ~ rate / tau
  double limit;        // converging: sigma_n -> limit
  double branch_value; // |u^* B^{-1} v|
  CMatrix b_limit;     // converging: limit of (B - tau v u^*)^{-1}
};
SmallestSVAsymptotics smallest_sv_asymptotics(const SVPerturbation& p);

/// kappa_2(B - tau v u^*) growth law, composed from the growth and smallest-value laws.
struct ConditionNumberAsymptotics {
  bool quadratic;      // u^* B^{-1} v == 0 branch: kappa ~ coefficient tau^2
  double coefficient;  // else kappa ~ coefficient tau
};
ConditionNumberAsymptotics condition_number_asymptotics(const SVPerturbation& p);

/// Per-tau singular values and distances to the large-tau limits, plus a
/// log-log slope fit of the distances for j >= 2.
struct SVSweepRow {
  double tau;
  std::vector<double> sigma;
  std::vector<double> dist_to_limit;  // |sigma_j - sqrt(z_{j-1})|, j >= 2
  double sigma_n_times_tau;           // vanishing-branch diagnostic (square B)
};
struct SVSweep {
  std::vector<SVSweepRow> rows;
  std::vector<double> slopes;  // fitted per j >= 2
  SVAsymptotics limits;
};
SVSweep sv_convergence_table(const SVPerturbation& p, const std::vector<double>& taus);

/// Exact singular values of B - tau v u^*; smallest one computed through the
/// Sherman-Morrison inverse when B is square so it stays accurate at large tau.
std::vector<double> perturbed_singular_values(const SVPerturbation& p, double tau);

}  // namespace ranktwo
