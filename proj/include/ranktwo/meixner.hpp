#pragma once

#include "ranktwo/measures.hpp"

namespace ranktwo {

/// Free Meixner family mu_(gamma, a, b, c), b, c >= 0. Density
/// c sqrt(4b - (x-a)^2) / (2 pi f(x)) on [a - 2 sqrt(b), a + 2 sqrt(b)] with
/// f(x) = (1-c)(x-a)^2 + (c-2)(gamma-a)(x-a) + (gamma-a)^2 + b c^2.
struct MeixnerParams {
  double gamma = 0, a = 0, b = 0, c = 0;

  static MeixnerParams wigner() { return {0, 0, 1, 1}; }
  static MeixnerParams marchenko_pastur(double alpha, double lambda) {
    return {alpha * lambda, alpha * (1 + lambda), alpha * alpha * lambda, 1};
  }
};

/// Atom bookkeeping per the family's algebraic rules: two atoms at the roots
/// of f when the discriminant Delta_g = c^2[(gamma-a)^2 - 4b(1-c)] is positive
/// and f is a genuine quadratic (c != 1); one atom at
/// x0 = gamma + b c^2/(gamma - a) when c = 1 and gamma != a; none otherwise.
/// c = 0 degenerates to delta_gamma.
struct MeixnerClassification {
  int atom_count = 0;
  std::vector<double> atom_locations;
  double discriminant = 0;            // Delta_g
  std::array<double, 3> f_coeffs{};   // f(x) = f0 + f1 x + f2 x^2
  bool is_delta = false;              // the c = 0 case
};
MeixnerClassification classify_atoms(const MeixnerParams& u);

/// Density of the absolutely continuous part at x (0 outside the support).
/// Throws DensityPole when f vanishes inside the open support.
double meixner_density(const MeixnerParams& u, double x);

/// Full measure: closed-form Cauchy transform, density, rule atoms with
/// residue masses (rule atoms whose residue mass is ~0 are dropped and
/// reported via zero_mass_rule_atoms).
struct MeixnerMeasure {
  MeixnerParams params;
  SpectralMeasure measure;
  std::vector<double> zero_mass_rule_atoms;
};
MeixnerMeasure meixner_measure(const MeixnerParams& u);

/// Closed-form Cauchy transform: G = 1/(z - gamma - c b W(z)) where W solves
/// b W^2 - (z-a) W + 1 = 0 on the Herglotz branch.
Complex meixner_cauchy(const MeixnerParams& u, Complex z);

/// Parameter map of the U-transform built from the deformation pair (s, t):
/// (gamma, a, b, c) -> ((1-s-t) gamma, a, b, c(1-s)(1-t)).
/// Requires (1-s)(1-t) >= 0; the degenerate product 0 gives the point mass
/// delta_{(1-s-t) gamma}. Throws InvalidParams when (1-s)(1-t) < 0.
struct MappedMeixner {
  bool is_delta = false;
  double delta_location = 0;
  MeixnerParams params;
};
MappedMeixner u_transform_params(const MeixnerParams& u, double s, double t);

/// Set of parameter values s described by "quadratic(s) > 0 minus excluded
/// points", the shape every phase-transition range here takes.
struct SRangeSet {
  std::array<double, 3> quadratic{};  // q0 + q1 s + q2 s^2, predicted when > 0
  std::vector<double> roots;          // 0, 1 or 2 real roots, ascending
  std::vector<double> excluded;       // isolated s where another rule preempts
  bool everywhere = false;            // no real roots: all s except exclusions

  bool contains(double s, double boundary_tol = 1e-9) const;
  bool near_boundary(double s, double boundary_tol = 1e-9) const;
};

/// One atom (c = 1, gamma != a) to two atoms under s = t.
SRangeSet phase_transition_1to2(const MeixnerParams& u);

/// Zero atoms to one atom under s = t: the exact-parameter candidates plus the
/// enclosing range the case hypothesis allows.
struct ZeroToOneResult {
  std::vector<double> candidates;     // s with c(1-s)^2 = 1 and mapped gamma != a
  bool has_range = false;
  double range_lo = 0, range_hi = 0;  // candidates can only live in
                                      // s < range_lo or s > range_hi
  bool impossible = false;            // e.g. gamma = a = 0 (flagged tension)
};
ZeroToOneResult phase_transition_0to1(const MeixnerParams& u);

/// Zero atoms to two atoms under s = t.
SRangeSet phase_transition_0to2(const MeixnerParams& u);

/// Atom count of the mapped parameters predicted purely from the transition
/// predicates (what the three propositions assert), with a boundary flag.
struct PredictedCount {
  int count = 0;
  bool flagged = false;  // within tolerance of a case boundary
};
PredictedCount predicted_atom_count(const MeixnerParams& u, double s);

}  // namespace ranktwo
