#include "ranktwo/measures.hpp"

#include <algorithm>
#include <cmath>

namespace ranktwo {

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex atoms_eval(const std::vector<Atom>& atoms, Complex z) {
  Complex s = 0;
  for (const auto& a : atoms) {
    Complex d = z - a.location;
    if (std::abs(d) < 1e-14 * (1.0 + std::abs(z)))
      fail(ErrorCode::PoleHit, "cauchy_eval at an atom");
    s += a.mass / d;
  }
  return s;
}

// Bottom-up continued fraction for the vacuum resolvent of a Jacobi matrix:
// G = 1 / (z - a0 - b0^2 / (z - a1 - b1^2 / ...)), truncated at depth n.
Complex jacobi_cf(const JacobiData& j, Complex z, int n) {
  Complex v = 0;
  int levels = j.tail_constant ? n : static_cast<int>(j.a.size());
  for (int k = levels - 1; k >= 1; --k) {
    double ak = (static_cast<std::size_t>(k) < j.a.size()) ? j.a[static_cast<std::size_t>(k)] : j.a_tail;
    double bk = (static_cast<std::size_t>(k - 1) < j.b.size())
                    ? j.b[static_cast<std::size_t>(k - 1)]
                    : j.b_tail;
    v = bk * bk / (z - ak - v);
  }
  double a0 = j.a.empty() ? j.a_tail : j.a[0];
  Complex denom = z - a0 - v;
  if (std::abs(denom) < 1e-300) fail(ErrorCode::PoleHit, "resolvent pole");
  return 1.0 / denom;
}

}  // namespace

Complex cauchy_wigner(Complex z) {
  if (z == Complex(0)) fail(ErrorCode::UnsupportedRegion, "z = 0 is on the support");
  Complex w = std::sqrt(z * z - 4.0);
  Complex g1 = (z - w) / 2.0, g2 = (z + w) / 2.0;
  // The two roots of G^2 - zG + 1 = 0 multiply to 1; the transform is the one
  // inside the unit disc, which is also the Herglotz branch.
  return std::abs(g1) <= std::abs(g2) ? g1 : g2;
}

SpectralMeasure SpectralMeasure::delta(double a) {
  SpectralMeasure m;
  m.atoms = {{a, 1.0}};
  m.first_moment = a;
  m.jacobi = JacobiData{{a}, {}, false, 0.0, 0.0};
  return m;
}

SpectralMeasure SpectralMeasure::bernoulli() {
  SpectralMeasure m;
  m.atoms = {{-1.0, 0.5}, {1.0, 0.5}};
  m.first_moment = 0.0;
  m.jacobi = JacobiData{{0.0, 0.0}, {1.0}, false, 0.0, 0.0};
  return m;
}

SpectralMeasure SpectralMeasure::wigner() {
  SpectralMeasure m;
  m.first_moment = 0.0;
  m.jacobi = JacobiData{{}, {}, true, 0.0, 1.0};
  m.closed_form = [](Complex z) { return cauchy_wigner(z); };
  AcPart ac;
  ac.support_lo = -2.0;
  ac.support_hi = 2.0;
  ac.density = [](double x) {
    return (std::abs(x) <= 2.0) ? std::sqrt(4.0 - x * x) / (2.0 * kPi) : 0.0;
  };
  m.ac = ac;
  return m;
}

SpectralMeasure SpectralMeasure::from_atoms(std::vector<Atom> atoms) {
  SpectralMeasure m;
  double mass = 0, mom = 0;
  for (const auto& a : atoms) {
    if (a.mass <= 0) fail(ErrorCode::InvalidParams, "atom masses must be positive");
    mass += a.mass;
    mom += a.mass * a.location;
  }
  if (std::abs(mass - 1.0) > 1e-8)
    fail(ErrorCode::InvalidParams, "atom masses must sum to one");
  m.atoms = std::move(atoms);
  m.first_moment = mom;
  return m;
}

SpectralMeasure SpectralMeasure::from_jacobi(JacobiData jacobi) {
  for (double b : jacobi.b)
    if (b <= 0) fail(ErrorCode::InvalidParams, "Jacobi b_n must be positive");
  SpectralMeasure m;
  m.first_moment = jacobi.a.empty() ? jacobi.a_tail : jacobi.a[0];
  m.jacobi = std::move(jacobi);
  return m;
}

Complex cauchy_eval(const SpectralMeasure& mu, Complex z) {
  if (mu.closed_form) return mu.closed_form(z);
  if (!mu.atoms.empty() && !mu.ac) return atoms_eval(mu.atoms, z);
  if (mu.jacobi) return jacobi_cf(*mu.jacobi, z, kJacobiTruncationDefault);
  fail(ErrorCode::UnsupportedRegion, "measure has no evaluatable representation");
}

CauchyTransform::CauchyTransform(SpectralMeasure mu)
    : measure_(std::move(mu)), moment_(measure_->first_moment) {}

Complex CauchyTransform::operator()(Complex z) const {
  if (measure_) return cauchy_eval(*measure_, z);
  return fn_(z);
}

CauchyTransform CauchyTransform::from_function(std::function<Complex(Complex)> f,
                                               double first_moment) {
  CauchyTransform g;
  g.fn_ = std::move(f);
  g.moment_ = first_moment;
  return g;
}

CauchyTransform u_transform(const CauchyTransform& g, double p, double q) {
  if (q < 0) fail(ErrorCode::InvalidParams, "U-transform requires q >= 0");
  double m = g.first_moment();
  if (!std::isfinite(m)) fail(ErrorCode::InvalidParams, "first moment must be finite");
  if (q == 0.0) return CauchyTransform(SpectralMeasure::delta(p * m));
  if (g.measure() && g.measure()->atoms.size() == 1 && !g.measure()->ac)
    return CauchyTransform(SpectralMeasure::delta(p * m));

  SpectralMeasure out;
  out.first_moment = p * m;
  if (g.measure() && g.measure()->jacobi) {
    // The transform only touches the first two continued-fraction parameters:
    // a0 -> p a0, b0^2 -> q b0^2.
    JacobiData j = *g.measure()->jacobi;
    double a0 = j.a.empty() ? j.a_tail : j.a[0];
    double b0 = j.b.empty() ? (j.tail_constant ? j.b_tail : 0.0) : j.b[0];
    if (b0 == 0.0) return CauchyTransform(SpectralMeasure::delta(p * m));
    if (j.a.empty()) j.a.push_back(a0);
    j.a[0] = p * a0;
    if (j.b.empty()) j.b.push_back(b0);
    j.b[0] = std::sqrt(q) * b0;
    out.jacobi = std::move(j);
  }
  // Defining-equation evaluator over the input transform. When the input is
  // exact (closed form or atoms) this stays exact arbitrarily close to R,
  // which the truncated continued fraction does not.
  bool input_exact =
      !g.measure() || g.measure()->closed_form ||
      (!g.measure()->atoms.empty() && !g.measure()->ac) || !g.measure()->jacobi;
  if (input_exact || !out.jacobi) {
    CauchyTransform base = g;
    out.closed_form = [base, p, q, m](Complex z) {
      Complex gz = base(z);
      if (std::abs(gz) < 1e-300) fail(ErrorCode::DenominatorVanishes, "G(z) = 0");
      Complex inv = q / gz + (1.0 - q) * z + (q - p) * m;
      if (std::abs(inv) < 1e-300) fail(ErrorCode::PoleHit, "transform pole");
      return 1.0 / inv;
    };
  }
  if (!out.jacobi && !out.closed_form)
    fail(ErrorCode::UnsupportedRegion, "input transform is not evaluatable");
  return CauchyTransform(std::move(out));
}

CauchyTransform t_transform(const CauchyTransform& g, double tau) {
  if (tau < 0) fail(ErrorCode::InvalidParams, "t-transform requires tau >= 0");
  return u_transform(g, tau, tau);
}

CauchyTransform w_transform(const CauchyTransform& g, double s, double t) {
  double m = g.first_moment();
  if (!std::isfinite(m)) fail(ErrorCode::InvalidParams, "first moment must be finite");
  double mout = m * (1.0 - t * m) - s;  // deformed a0 entry is the new mean
  if (g.measure() && g.measure()->jacobi && !g.measure()->jacobi->tail_constant) {
    // Finitely supported input: the deformed tridiagonal is the whole operator,
    // so its resolvent is the exact (rational) transform.
    const JacobiData& j = *g.measure()->jacobi;
    TridiagonalOperator op =
        jacobi_deform_diagonal(j, s, t, static_cast<int>(j.a.size()));
    SpectralMeasure out;
    out.first_moment = mout;
    out.closed_form = [op](Complex z) { return op.resolvent_e0(z); };
    return CauchyTransform(std::move(out));
  }
  CauchyTransform base = g;
  SpectralMeasure out;
  out.first_moment = mout;
  out.closed_form = [base, s, t, m](Complex z) {
    Complex gz = base(z);
    Complex denom = (1.0 - t * m + t * z) * gz - t;
    if (std::abs(denom) < 1e-300)
      fail(ErrorCode::DenominatorVanishes, "W-transform denominator vanished");
    Complex inv = s + (1.0 + t * (z * z * gz - m - z)) / denom;
    if (std::abs(inv) < 1e-300) fail(ErrorCode::PoleHit, "transform pole");
    return 1.0 / inv;
  };
  return CauchyTransform(std::move(out));
}

Complex TridiagonalOperator::resolvent_e0(Complex z) const {
  // Eliminate from the last row upward; for the (0,0) entry this is exactly
  // the continued fraction with numerators super_k * sub_k.
  std::size_t n = diag.size();
  Complex v = 0;
  for (std::size_t k = n - 1; k >= 1; --k) {
    v = super[k - 1] * sub[k - 1] / (z - diag[k] - v);
    if (k == 1) break;
  }
  Complex denom = z - diag[0] - (n > 1 ? v : Complex(0));
  if (std::abs(denom) < 1e-300) fail(ErrorCode::PoleHit, "resolvent pole");
  return 1.0 / denom;
}

namespace {
TridiagonalOperator materialize_jacobi(const JacobiData& j, int n) {
  TridiagonalOperator op;
  std::size_t size = j.tail_constant
                         ? static_cast<std::size_t>(n)
                         : std::min(static_cast<std::size_t>(n), j.a.size());
  if (size == 0) fail(ErrorCode::BadInput, "empty Jacobi data");
  op.diag.resize(size);
  op.super.resize(size - 1);
  op.sub.resize(size - 1);
  for (std::size_t i = 0; i < size; ++i)
    op.diag[i] = i < j.a.size() ? j.a[i] : j.a_tail;
  for (std::size_t i = 0; i + 1 < size; ++i) {
    double b = i < j.b.size() ? j.b[i] : j.b_tail;
    op.super[i] = b;
    op.sub[i] = b;
  }
  return op;
}
}  // namespace

TridiagonalOperator jacobi_truncate(const JacobiData& j, int n) {
  return materialize_jacobi(j, n);
}

TridiagonalOperator jacobi_deform_antidiagonal(const JacobiData& j, double s,
                                               double t, int n) {
  TridiagonalOperator op = materialize_jacobi(j, n);
  op.diag[0] *= (1.0 - s - t);
  if (!op.super.empty()) {
    op.super[0] *= (1.0 - s);
    op.sub[0] *= (1.0 - t);
  }
  return op;
}

TridiagonalOperator jacobi_deform_diagonal(const JacobiData& j, double s, double t,
                                           int n) {
  TridiagonalOperator op = materialize_jacobi(j, n);
  double m = op.diag[0];
  double b0 = op.super.empty() ? 0.0 : op.super[0];
  op.diag[0] = m * (1.0 - t * m) - s;
  if (!op.super.empty()) {
    op.super[0] = b0 * (1.0 - t * m);
    op.sub[0] = b0 * (1.0 - t * m);
    op.diag[1] -= t * b0 * b0;
  }
  return op;
}

double atom_mass_at(const std::function<Complex(Complex)>& g, double location) {
  // mass = lim eps * (-Im G(x + i eps)); linear extrapolation over two eps.
  double e1 = 1e-6, e2 = 1e-8;
  double m1 = e1 * (-g(Complex(location, e1)).imag());
  double m2 = e2 * (-g(Complex(location, e2)).imag());
  return (e1 * m2 - e2 * m1) / (e1 - e2);
}

StieltjesResult stieltjes_invert(const std::function<Complex(Complex)>& g,
                                 const std::vector<double>& grid,
                                 std::vector<double> eps_schedule,
                                 double atom_window_lo, double atom_window_hi) {
  if (eps_schedule.size() < 2)
    fail(ErrorCode::BadInput, "epsilon schedule needs at least two values");
  for (std::size_t i = 1; i < eps_schedule.size(); ++i)
    if (eps_schedule[i] >= eps_schedule[i - 1])
      fail(ErrorCode::BadInput, "epsilon schedule must decrease");
  StieltjesResult out;
  out.grid = grid;
  out.density.resize(grid.size());
  out.flagged.assign(grid.size(), 0);
  std::size_t last = eps_schedule.size() - 1;
  double e1 = eps_schedule[last - 1], e2 = eps_schedule[last];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid[i];
    double d1 = -g(Complex(x, e1)).imag() / kPi;
    double d2 = -g(Complex(x, e2)).imag() / kPi;
    double extrap = (e1 * d2 - e2 * d1) / (e1 - e2);
    out.density[i] = extrap;
    // Flag where the two raw values disagree wildly (pole neighborhoods).
    double scale = std::max({std::abs(d1), std::abs(d2), 1.0});
    if (std::abs(d1 - d2) > 0.5 * scale && std::abs(d2) > 1e3)
      out.flagged[i] = 1;
    if (out.density[i] < 0 && out.density[i] > -1e-7) out.density[i] = 0;
  }

  // Atom scan: coarse pass at moderate eps, then refine local maxima of
  // eps|Im G| and keep masses that stabilize across two eps values.
  const int scan_points = 4801;
  double step = (atom_window_hi - atom_window_lo) / (scan_points - 1);
  // The coarse eps must be at least the scan step, or a narrow atom peak can
  // fall between grid points entirely.
  double e_coarse = std::max(1e-4, 0.75 * step);
  double prev = 0, prev2 = 0;
  std::vector<double> candidates;
  for (int k = 0; k < scan_points; ++k) {
    double x = atom_window_lo + k * step;
    double v = e_coarse * std::abs(g(Complex(x, e_coarse)).imag());
    if (k >= 2 && prev > prev2 && prev > v && prev > 1e-5)
      candidates.push_back(x - step);
    prev2 = prev;
    prev = v;
  }
  for (double c : candidates) {
    // Parabolic refinement of the peak of |Im G(x + i eps)| at small eps.
    double x = c, h = step;
    for (int it = 0; it < 60 && h > 1e-13; ++it) {
      double eref = std::max(1e-7, h * 1e-2);
      double f0 = std::abs(g(Complex(x - h, eref)).imag());
      double f1 = std::abs(g(Complex(x, eref)).imag());
      double f2 = std::abs(g(Complex(x + h, eref)).imag());
      if (f1 >= f0 && f1 >= f2) {
        double denom = f0 - 2 * f1 + f2;
        if (std::abs(denom) > 1e-300) {
          double shift = 0.5 * (f0 - f2) / denom;
          x += std::clamp(shift, -1.0, 1.0) * h;
        }
        h *= 0.25;
      } else {
        x = (f0 > f2) ? x - h : x + h;
        h *= 0.9;
      }
    }
    double m1 = 1e-6 * std::abs(g(Complex(x, 1e-6)).imag());
    double m2 = 1e-8 * std::abs(g(Complex(x, 1e-8)).imag());
    if (m1 > tol::atom_mass && m2 > tol::atom_mass &&
        std::abs(m1 - m2) < 0.2 * std::max(m1, m2)) {
      double mass = (1e-6 * m2 - 1e-8 * m1) / (1e-6 - 1e-8);
      bool dup = false;
      for (const auto& a : out.atoms)
        if (std::abs(a.location - x) < 1e-6) dup = true;
      if (!dup) out.atoms.push_back({x, mass});
    }
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  return out;
}

}  // namespace ranktwo
