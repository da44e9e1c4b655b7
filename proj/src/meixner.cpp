#include "ranktwo/meixner.hpp"

#include <algorithm>
#include <cmath>

namespace ranktwo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPred = tol::meixner_predicate;

double f_eval(const MeixnerParams& u, double x) {
  double y = x - u.a;
  double d = u.gamma - u.a;
  return (1.0 - u.c) * y * y + (u.c - 2.0) * d * y + d * d + u.b * u.c * u.c;
}

// ((1-2s)gamma - a)^2 - 4b(1 - c(1-s)^2) as a quadratic in s. Its sign is the
// sign of Delta_{g_s} for s != 1, the two-atom criterion for the mapped
// parameters.
std::array<double, 3> bracket_quadratic(const MeixnerParams& u) {
  double d = u.gamma - u.a;
  return {d * d - 4.0 * u.b * (1.0 - u.c),
          -4.0 * (u.gamma * d + 2.0 * u.b * u.c),
          4.0 * (u.gamma * u.gamma + u.b * u.c)};
}

double eval_quad(const std::array<double, 3>& q, double s) {
  return q[0] + s * (q[1] + s * q[2]);
}

std::vector<double> quad_roots(const std::array<double, 3>& q) {
  if (q[2] == 0.0) {
    if (q[1] == 0.0) return {};
    return {-q[0] / q[1]};
  }
  double disc = q[1] * q[1] - 4.0 * q[2] * q[0];
  if (disc < 0) return {};
  double r = std::sqrt(disc);
  double s1 = (-q[1] - r) / (2.0 * q[2]);
  double s2 = (-q[1] + r) / (2.0 * q[2]);
  if (s1 > s2) std::swap(s1, s2);
  if (disc == 0) return {s1};
  return {s1, s2};
}

// s values where the mapped c lands on 1 or 0; there the one-atom/delta rules
// preempt the two-atom rule.
std::vector<double> preempting_points(const MeixnerParams& u) {
  std::vector<double> pts{1.0};
  if (u.c > 0) {
    double r = 1.0 / std::sqrt(u.c);
    pts.push_back(1.0 - r);
    pts.push_back(1.0 + r);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

MeixnerClassification classify_atoms(const MeixnerParams& u) {
  if (u.b < 0 || u.c < 0) fail(ErrorCode::InvalidParams, "b, c must be >= 0");
  MeixnerClassification out;
  double d = u.gamma - u.a;
  out.discriminant = u.c * u.c * (d * d - 4.0 * u.b * (1.0 - u.c));
  // f in powers of x.
  double f2 = 1.0 - u.c;
  double f1 = (u.c - 2.0) * d - 2.0 * (1.0 - u.c) * u.a;
  double f0 = (1.0 - u.c) * u.a * u.a - (u.c - 2.0) * d * u.a + d * d +
              u.b * u.c * u.c;
  out.f_coeffs = {f0, f1, f2};
  if (u.c <= kPred) {
    out.is_delta = true;  // mu = delta_gamma
    out.atom_count = 1;
    out.atom_locations = {u.gamma};
    return out;
  }
  if (std::abs(u.c - 1.0) <= kPred) {
    if (std::abs(d) > kPred) {
      out.atom_count = 1;
      out.atom_locations = {u.gamma + u.b * u.c * u.c / d};
    }
    return out;
  }
  if (out.discriminant > 0) {
    // Roots of f: (1-c)y^2 + (c-2)d y + (d^2 + b c^2), y = x - a.
    double qa = 1.0 - u.c, qb = (u.c - 2.0) * d, qc = d * d + u.b * u.c * u.c;
    double disc = qb * qb - 4.0 * qa * qc;  // = Delta_g
    double r = std::sqrt(std::max(0.0, disc));
    double y1 = (-qb - r) / (2.0 * qa), y2 = (-qb + r) / (2.0 * qa);
    out.atom_count = 2;
    out.atom_locations = {u.a + std::min(y1, y2), u.a + std::max(y1, y2)};
  }
  return out;
}

double meixner_density(const MeixnerParams& u, double x) {
  if (u.b <= 0) return 0.0;
  double half_width = 2.0 * std::sqrt(u.b);
  double y = x - u.a;
  if (std::abs(y) >= half_width) return 0.0;
  double f = f_eval(u, x);
  double num = u.c * std::sqrt(4.0 * u.b - y * y);
  if (std::abs(f) < 1e-12 * std::max(1.0, num))
    fail(ErrorCode::DenominatorVanishes, "f vanishes inside the support");
  return num / (2.0 * kPi * f);
}

Complex meixner_cauchy(const MeixnerParams& u, Complex z) {
  if (u.c <= kPred) {
    Complex d = z - u.gamma;
    if (std::abs(d) < 1e-300) fail(ErrorCode::PoleHit, "atom pole");
    return 1.0 / d;
  }
  if (u.b <= 0) {
    // Point spectrum only: continued fraction terminates after one level.
    Complex d = z - u.gamma;
    if (std::abs(d) < 1e-300) fail(ErrorCode::PoleHit, "atom pole");
    return 1.0 / d;
  }
  // Tail of the continued fraction: W = ((z-a) - sqrt((z-a)^2 - 4b))/(2b),
  // the root of b W^2 - (z-a) W + 1 = 0 with |W| <= 1/sqrt(b).
  Complex za = z - u.a;
  Complex root = std::sqrt(za * za - 4.0 * u.b);
  Complex w1 = (za - root) / (2.0 * u.b), w2 = (za + root) / (2.0 * u.b);
  Complex w = (std::abs(w1) <= std::abs(w2)) ? w1 : w2;
  Complex denom = z - u.gamma - u.c * u.b * w;
  if (std::abs(denom) < 1e-300) fail(ErrorCode::PoleHit, "pole of G");
  return 1.0 / denom;
}

MeixnerMeasure meixner_measure(const MeixnerParams& u) {
  MeixnerClassification cls = classify_atoms(u);
  MeixnerMeasure out;
  out.params = u;
  SpectralMeasure& m = out.measure;
  m.first_moment = u.gamma;
  MeixnerParams copy = u;
  m.closed_form = [copy](Complex z) { return meixner_cauchy(copy, z); };
  if (u.b > 0 && u.c > kPred) {
    AcPart ac;
    ac.support_lo = u.a - 2.0 * std::sqrt(u.b);
    ac.support_hi = u.a + 2.0 * std::sqrt(u.b);
    ac.density = [copy](double x) { return meixner_density(copy, x); };
    m.ac = ac;
    // Jacobi data: diagonal gamma, a, a, ...; off-diagonal sqrt(bc), sqrt(b), ...
    JacobiData j;
    j.a = {u.gamma};
    j.b = {std::sqrt(u.b * u.c)};
    j.tail_constant = true;
    j.a_tail = u.a;
    j.b_tail = std::sqrt(u.b);
    m.jacobi = std::move(j);
  }
  if (cls.is_delta) {
    m = SpectralMeasure::delta(u.gamma);
    return out;
  }
  // Rule atoms carry the residue mass of G there; a rule atom whose residue
  // vanishes is not an atom of the measure.
  for (double loc : cls.atom_locations) {
    double mass = atom_mass_at(m.closed_form, loc);
    if (mass > tol::atom_mass)
      m.atoms.push_back({loc, mass});
    else
      out.zero_mass_rule_atoms.push_back(loc);
  }
  return out;
}

MappedMeixner u_transform_params(const MeixnerParams& u, double s, double t) {
  double q = (1.0 - s) * (1.0 - t);
  if (q < 0)
    fail(ErrorCode::InvalidParams, "(1-s)(1-t) must be nonnegative");
  MappedMeixner out;
  double p = 1.0 - s - t;
  if (q == 0.0) {
    out.is_delta = true;
    out.delta_location = p * u.gamma;  // U^{p,0}(mu) = delta_{p m}, m = gamma
    return out;
  }
  out.params = {p * u.gamma, u.a, u.b, u.c * q};
  return out;
}

bool SRangeSet::contains(double s, double boundary_tol) const {
  for (double e : excluded)
    if (std::abs(s - e) <= boundary_tol) return false;
  return eval_quad(quadratic, s) > 0;
}

bool SRangeSet::near_boundary(double s, double boundary_tol) const {
  double scale = std::max({std::abs(quadratic[0]), std::abs(quadratic[1]),
                           std::abs(quadratic[2]), 1.0});
  if (std::abs(eval_quad(quadratic, s)) <= boundary_tol * scale) return true;
  for (double e : excluded)
    if (std::abs(s - e) <= boundary_tol) return true;
  return false;
}

SRangeSet phase_transition_1to2(const MeixnerParams& u) {
  MeixnerClassification cls = classify_atoms(u);
  if (cls.atom_count != 1 || cls.is_delta)
    fail(ErrorCode::HypothesisViolated, "input must have exactly one atom (c=1)");
  SRangeSet out;
  out.quadratic = bracket_quadratic(u);
  out.roots = quad_roots(out.quadratic);
  out.everywhere = out.roots.empty();
  out.excluded = preempting_points(u);  // c=1: s in {0, 1, 2}
  return out;
}

ZeroToOneResult phase_transition_0to1(const MeixnerParams& u) {
  MeixnerClassification cls = classify_atoms(u);
  if (cls.atom_count != 0)
    fail(ErrorCode::HypothesisViolated, "input must have no atoms");
  ZeroToOneResult out;
  if (u.c <= kPred)
    fail(ErrorCode::HypothesisViolated, "c must be positive");
  // One atom needs the mapped c to be exactly 1 and the mapped gamma != a.
  double r = 1.0 / std::sqrt(u.c);
  for (double s : {1.0 - r, 1.0 + r}) {
    double mapped_gamma = (1.0 - 2.0 * s) * u.gamma;
    if (std::abs(mapped_gamma - u.a) > kPred) out.candidates.push_back(s);
  }
  if (out.candidates.empty()) out.impossible = true;
  if (std::abs(u.c - 1.0) > kPred) {
    // Case hypothesis (gamma-a)^2 <= 4b(1-c) in the normalized variable
    // r0 = (gamma-a)/(2 sqrt(b) ) (gamma != 0 per the proposition).
    if (u.gamma == 0.0 || u.b <= 0)
      fail(ErrorCode::HypothesisViolated, "gamma != 0 and b > 0 required");
    double r0sq = (u.gamma - u.a) * (u.gamma - u.a) / (4.0 * u.b);
    if (1.0 - r0sq <= 0)
      fail(ErrorCode::UndefinedRange, "(1 - r^2)^{-1/2} undefined at r^2 >= 1");
    double half = 1.0 / std::sqrt(1.0 - r0sq);
    out.has_range = true;
    out.range_lo = 1.0 - half;
    out.range_hi = 1.0 + half;
  }
  return out;
}

SRangeSet phase_transition_0to2(const MeixnerParams& u) {
  MeixnerClassification cls = classify_atoms(u);
  if (cls.atom_count != 0)
    fail(ErrorCode::HypothesisViolated, "input must have no atoms");
  if (u.c <= kPred)
    fail(ErrorCode::HypothesisViolated, "c must be positive");
  SRangeSet out;
  out.quadratic = bracket_quadratic(u);
  out.roots = quad_roots(out.quadratic);
  out.everywhere = out.roots.empty();
  out.excluded = preempting_points(u);
  return out;
}

PredictedCount predicted_atom_count(const MeixnerParams& u, double s) {
  PredictedCount out;
  double q = (1.0 - s) * (1.0 - s);
  double cs = u.c * q;
  double mapped_gamma = (1.0 - 2.0 * s) * u.gamma;
  double bq = eval_quad(bracket_quadratic(u), s);
  double bscale = std::max({std::abs(u.gamma), std::abs(u.a), u.b, u.c, 1.0});
  bool boundary = std::abs(cs) <= kPred * 10 || std::abs(cs - 1.0) <= kPred * 10 ||
                  std::abs(bq) <= 1e-8 * bscale * bscale;
  out.flagged = boundary;
  if (cs <= kPred) {
    out.count = 1;  // delta at the mapped gamma
    return out;
  }
  if (std::abs(cs - 1.0) <= kPred) {
    out.count = std::abs(mapped_gamma - u.a) > kPred ? 1 : 0;
    out.flagged = true;  // exact-parameter case; measure-zero in s
    return out;
  }
  out.count = bq > 0 ? 2 : 0;
  return out;
}

}  // namespace ranktwo
