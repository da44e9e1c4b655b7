#include "ranktwo/singular_values.hpp"

#include "ranktwo/roots.hpp"

#include <algorithm>

namespace ranktwo {

namespace {

// det(x-A) R_tau(x) pieces for A = B^*B, w = B^*v, shared by the two
// polynomial ops:  det*R = det + tau (P_uw + P_wu) + tau^2 (-P_uu + S),
// S = (P_uw P_wu - P_ww P_uu)/det. Everything is assembled in the scaled
// variable x' = x/rho where the monomial basis is well conditioned.
struct GramPieces {
  double rho;
  std::size_t n;
  CPoly det, first_order, p_uu, s;  // scaled-basis polynomials
};

GramPieces gram_pieces(const SVPerturbation& p) {
  CMatrix a = adjoint(p.b) * p.b;
  ScaledAdjugate sa = ScaledAdjugate::make(a);
  CPoly p_uw = sa.form(p.u, p.w);
  CPoly p_wu = sa.form(p.w, p.u);
  CPoly p_uu = sa.form(p.u, p.u);
  CPoly p_ww = sa.form(p.w, p.w);
  CPoly cross = p_uw * p_wu - p_ww * p_uu;
  CPoly s = divide(cross, sa.cs.det).quotient;
  return {sa.rho, a.rows(), sa.cs.det, p_uw + p_wu, p_uu, s};
}

CPoly real_coefficients(const CPoly& p) {
  CVector c = p.coeffs();
  for (auto& e : c) e = Complex(e.real(), 0.0);
  return CPoly(std::move(c));
}

double sv_smallest_via_inverse(const CMatrix& b, const CVector& u, const CVector& v,
                               double tau) {
  // (B - tau v u^*)^{-1} = B^{-1} + tau B^{-1} v u^* B^{-1} / (1 - tau u^* B^{-1} v);
  // sigma_n = 1 / sigma_max of it, stable at large tau.
  CMatrix binv = inverse(b);
  CVector bv = binv * v;
  CVector bstaru = adjoint(binv) * u;  // (u^* B^{-1})^* = B^{-*} u
  Complex c = inner(bv, u);            // u^* B^{-1} v
  Complex factor = tau / (1.0 - tau * c);
  CMatrix inv = binv + factor * outer(bv, bstaru);
  std::vector<double> sv = singular_values(inv);
  return 1.0 / sv.front();
}

}  // namespace

SVPerturbation SVPerturbation::make(CMatrix b, CVector u, CVector v) {
  if (u.size() != b.cols()) fail(ErrorCode::BadInput, "u must have length cols(B)");
  if (v.size() != b.rows()) fail(ErrorCode::BadInput, "v must have length rows(B)");
  if (std::abs(norm2(u) - 1.0) > 1e-12 || std::abs(norm2(v) - 1.0) > 1e-12)
    fail(ErrorCode::BadInput, "u and v must be unit vectors");
  SVPerturbation p;
  p.w = adjoint(b) * v;
  p.b = std::move(b);
  p.u = std::move(u);
  p.v = std::move(v);
  double wn = norm2(p.w);
  if (wn < 1e-14) {
    p.scalar_multiple = true;  // B^*v = 0 counts as (trivially) parallel
  } else {
    Complex proj = inner(p.w, p.u);  // <w, u>, |u| = 1
    double sin2 = 1.0 - std::norm(proj) / (wn * wn);
    p.scalar_multiple = sin2 < tol::scalar_multiple_sin * tol::scalar_multiple_sin;
  }
  return p;
}

CPoly gram_char_poly(const SVPerturbation& p, double tau) {
  if (p.scalar_multiple)
    fail(ErrorCode::ScalarMultipleCase,
         "B^*v parallel to u; ordinary Hermitian perturbation theory applies");
  GramPieces gp = gram_pieces(p);
  Complex r(1.0 / gp.rho, 0);
  CPoly scaled = gp.det + (Complex(tau) * r) * gp.first_order +
                 (Complex(-tau * tau) * r) * gp.p_uu +
                 (Complex(tau * tau) * r * r) * gp.s;
  return real_coefficients(
      unscale_poly(scaled, gp.rho, static_cast<int>(gp.n)));
}

SVAsymptotics sv_limit_polynomial(const SVPerturbation& p) {
  if (p.scalar_multiple)
    fail(ErrorCode::ScalarMultipleCase,
         "B^*v parallel to u; ordinary Hermitian perturbation theory applies");
  GramPieces gp = gram_pieces(p);
  SVAsymptotics out;
  CPoly q_scaled = (Complex(-1) * gp.p_uu) + (Complex(1.0 / gp.rho, 0) * gp.s);
  out.q = real_coefficients(
      unscale_poly(q_scaled, gp.rho, static_cast<int>(gp.n) - 1));
  if (out.q.is_zero())
    fail(ErrorCode::DegenerateDirections, "limit polynomial is identically zero");
  CVector roots = poly_roots(out.q);
  double rmax = 1.0;
  for (const auto& r : roots) rmax = std::max(rmax, std::abs(r));
  std::vector<double> z;
  for (const auto& r : roots) {
    if (r.real() < -1e-9 * rmax)
      fail(ErrorCode::DegenerateDirections, "negative limit root");
    z.push_back(std::max(0.0, r.real()));
  }
  std::sort(z.rbegin(), z.rend());
  out.finite_limits.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out.finite_limits[i] = std::sqrt(z[i]);
  out.sigma1_at_zero = singular_values(p.b).front();
  return out;
}

SmallestSVAsymptotics smallest_sv_asymptotics(const SVPerturbation& p) {
  if (!p.b.square()) fail(ErrorCode::BadInput, "square B required");
  CMatrix binv;
  try {
    binv = inverse(p.b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix)
      fail(ErrorCode::SingularB, "B must be invertible");
    throw;
  }
  CVector bv = binv * p.v;
  CVector bstaru = adjoint(binv) * p.u;
  Complex c = inner(bv, p.u);  // u^* B^{-1} v
  SmallestSVAsymptotics out;
  out.branch_value = std::abs(c);
  double scale = norm2(bstaru) * norm2(p.v);
  if (out.branch_value < tol::orth_branch * std::max(scale, 1e-300)) {
    out.vanishes = true;
    // (B - tau v u^*)^{-1} = B^{-1} + tau (B^{-1}v)(B^{-*}u)^*, so the top
    // singular value grows like tau |B^{-1}v| |B^{-*}u|.
    out.rate = 1.0 / (norm2(bv) * norm2(bstaru));
    out.limit = 0.0;
  } else {
    out.vanishes = false;
    out.b_limit = binv - (1.0 / c) * outer(bv, bstaru);
    out.limit = 1.0 / singular_values(out.b_limit).front();
    out.rate = 0.0;
  }
  return out;
}

ConditionNumberAsymptotics condition_number_asymptotics(const SVPerturbation& p) {
  SmallestSVAsymptotics sm = smallest_sv_asymptotics(p);
  ConditionNumberAsymptotics out;
  out.quadratic = sm.vanishes;
  // sigma_1 ~ tau; kappa = sigma_1 / sigma_n.
  out.coefficient = sm.vanishes ? 1.0 / sm.rate : 1.0 / sm.limit;
  return out;
}

std::vector<double> perturbed_singular_values(const SVPerturbation& p, double tau) {
  CMatrix m = p.b - Complex(tau) * outer(p.v, p.u);
  std::vector<double> sv = singular_values(m);
  if (p.b.square() && tau > 0) {
    try {
      sv.back() = sv_smallest_via_inverse(p.b, p.u, p.v, tau);
    } catch (const Error&) {
      // singular B or resonance tau: keep the Gram value
    }
  }
  return sv;
}

SVSweep sv_convergence_table(const SVPerturbation& p, const std::vector<double>& taus) {
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (taus[i] <= taus[i - 1] || taus[i - 1] < 0)
      fail(ErrorCode::BadInput, "tau grid must be positive increasing");
  SVSweep sweep;
  sweep.limits = sv_limit_polynomial(p);
  for (double tau : taus) {
    SVSweepRow row;
    row.tau = tau;
    row.sigma = perturbed_singular_values(p, tau);
    for (std::size_t j = 1; j < row.sigma.size(); ++j) {
      double lim = (j - 1 < sweep.limits.finite_limits.size())
                       ? sweep.limits.finite_limits[j - 1]
                       : 0.0;
      row.dist_to_limit.push_back(std::abs(row.sigma[j] - lim));
    }
    row.sigma_n_times_tau = row.sigma.back() * tau;
    sweep.rows.push_back(std::move(row));
  }
  // Least-squares slope of log10(dist) vs log10(tau), per trailing value.
  std::size_t nj = sweep.rows.empty() ? 0 : sweep.rows.front().dist_to_limit.size();
  for (std::size_t j = 0; j < nj; ++j) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : sweep.rows) {
      if (row.tau <= 0 || row.dist_to_limit[j] <= 0) continue;
      double x = std::log10(row.tau), y = std::log10(row.dist_to_limit[j]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    sweep.slopes.push_back(cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx)
                                    : 0.0);
  }
  return sweep;
}

}  // namespace ranktwo
