#include "ranktwo/rank_two.hpp"

#include "ranktwo/roots.hpp"

#include <algorithm>

namespace ranktwo {

namespace {

void check_dims(const CMatrix& a, std::initializer_list<const CVector*> vs) {
  if (!a.square()) fail(ErrorCode::BadInput, "A must be square");
  for (const CVector* v : vs)
    if (v->size() != a.rows()) fail(ErrorCode::BadInput, "vector size mismatch");
}

}  // namespace

Rank2Perturbation Rank2Perturbation::general(CMatrix a, CVector u, CVector w,
                                             CVector g, CVector h, Complex s,
                                             Complex t) {
  check_dims(a, {&u, &w, &g, &h});
  return {std::move(a), std::move(u), std::move(w), std::move(g), std::move(h),
          s,            t,            PerturbationShape::General};
}

Rank2Perturbation Rank2Perturbation::antidiagonal(CMatrix a, CVector u, Complex s,
                                                  Complex t) {
  check_dims(a, {&u});
  CVector au = a * u;
  // A - s u (Au)^* - t (Au) u^*
  return {std::move(a), u, au, au, u, s, t, PerturbationShape::Antidiagonal};
}

Rank2Perturbation Rank2Perturbation::diagonal(CMatrix a, CVector u, Complex s,
                                              Complex t) {
  check_dims(a, {&u});
  CVector au = a * u;
  // A - s u u^* - t (Au)(Au)^*
  return {std::move(a), u, u, au, au, s, t, PerturbationShape::Diagonal};
}

CMatrix materialize(const Rank2Perturbation& p) {
  return p.a - (p.s * outer(p.u, p.w)) - (p.t * outer(p.g, p.h));
}

CPoly perturbed_char_poly(const Rank2Perturbation& p) {
  // Assembled in the scaled variable z' = z/rho:
  // det(z-A) R_{s,t}(z) = rho^n [det' + (s/rho) P'_uw + (t/rho) P'_gh
  //                              + (st/rho^2) S'](z/rho),
  // with S' = (P'_uw P'_gh - P'_gw P'_uh)/det', an exact division (the double
  // poles cancel in the 2x2 minor).
  ScaledAdjugate sa = ScaledAdjugate::make(p.a);
  CPoly p_uw = sa.form(p.u, p.w);
  CPoly p_gh = sa.form(p.g, p.h);
  CPoly p_gw = sa.form(p.g, p.w);
  CPoly p_uh = sa.form(p.u, p.h);
  CPoly cross = p_uw * p_gh - p_gw * p_uh;
  CPoly second = divide(cross, sa.cs.det).quotient;
  Complex r(1.0 / sa.rho, 0);
  CPoly scaled = sa.cs.det + (p.s * r) * p_uw + (p.t * r) * p_gh +
                 (p.s * p.t * r * r) * second;
  return unscale_poly(scaled, sa.rho, static_cast<int>(p.dim()));
}

LimitPolynomial limit_polynomial_q(const Rank2Perturbation& p) {
  ScaledAdjugate sa = ScaledAdjugate::make(p.a);
  CPoly cross =
      sa.form(p.u, p.w) * sa.form(p.g, p.h) - sa.form(p.g, p.w) * sa.form(p.u, p.h);
  CPoly q_scaled = divide(cross, sa.cs.det).quotient;
  CPoly q = unscale_poly(q_scaled, sa.rho, static_cast<int>(p.dim()) - 2);
  double input_scale =
      std::max({norm2(p.u) * norm2(p.w), norm2(p.g) * norm2(p.h), 1.0});
  LimitPolynomial out;
  if (q.is_zero() || q_scaled.scale() < 1e-11 * input_scale * input_scale)
    fail(ErrorCode::DegenerateDirections, "q(z) is identically zero");
  out.q = q;
  out.simple = true;
  if (q.degree() >= 1) {
    out.roots = poly_roots(q);
    double spread = 1.0;
    for (const auto& r : out.roots) spread = std::max(spread, std::abs(r));
    for (std::size_t i = 0; i < out.roots.size() && out.simple; ++i)
      for (std::size_t j = i + 1; j < out.roots.size(); ++j)
        if (std::abs(out.roots[i] - out.roots[j]) <= tol::root_cluster_rel * spread) {
          out.simple = false;
          break;
        }
  }
  return out;
}

AsymptoticSpectrum asymptotic_spectrum(const Rank2Perturbation& p, Complex alpha,
                                       Complex beta) {
  if (alpha == Complex(0) || beta == Complex(0))
    fail(ErrorCode::BadInput, "alpha and beta must be nonzero");
  // Eigenvalues of r^{-1}(A - (alpha r) u w^* - (beta r) g h^*) approach the
  // eigenvalues of -(alpha u w^* + beta g h^*), which live on span{u, g}; in
  // the (u, g) coordinates that map is
  // -[[alpha <u,w>, alpha <g,w>], [beta <u,h>, beta <g,h>]].
  Complex t11 = -alpha * inner(p.u, p.w), t12 = -alpha * inner(p.g, p.w);
  Complex t21 = -beta * inner(p.u, p.h), t22 = -beta * inner(p.g, p.h);
  Complex tr = t11 + t22, det = t11 * t22 - t12 * t21;
  Complex disc = std::sqrt(tr * tr - 4.0 * det);
  AsymptoticSpectrum out;
  out.divergent = {(tr + disc) / 2.0, (tr - disc) / 2.0};
  double scale = std::max({std::abs(t11), std::abs(t12), std::abs(t21),
                           std::abs(t22), 1e-30});
  out.degenerate = std::abs(det) <= 1e-12 * scale * scale;
  try {
    out.finite_limits = limit_polynomial_q(p).roots;
  } catch (const Error& e) {
    // Fully degenerate directions: report the flagged divergent part alone.
    if (e.code() != ErrorCode::DegenerateDirections || !out.degenerate) throw;
  }
  return out;
}

Complex weyl_rank2_general(const CMatrix& a, const CVector& u, const CVector& w,
                           const CVector& g, const CVector& h, Complex s,
                           Complex t, Complex z) {
  Complex q_u = weyl_eval(a, u, z);
  Complex q_uw = weyl_eval(a, u, w, z);
  Complex q_gh = weyl_eval(a, g, h, z);
  Complex q_gw = weyl_eval(a, g, w, z);
  Complex q_uh = weyl_eval(a, u, h, z);
  Complex q_gu = weyl_eval(a, g, u, z);
  Complex denom = 1.0 + s * q_uw + t * q_gh + s * t * q_gh * q_uw - s * t * q_gw * q_uh;
  if (std::abs(denom) < 1e-14)
    fail(ErrorCode::PoleHit, "z is in the perturbed spectrum");
  return (q_u + t * q_u * q_gh - t * q_uh * q_gu) / denom;
}

Complex weyl_tilde(const CMatrix& a, const CVector& u, const CVector& w, Complex s,
                   Complex t, Complex z) {
  Complex q_u = weyl_eval(a, u, z);
  Complex q_w = weyl_eval(a, w, z);
  Complex q_uw = weyl_eval(a, u, w, z);
  Complex q_wu = weyl_eval(a, w, u, z);
  Complex denom = 1.0 + s * q_uw + t * q_wu + s * t * q_uw * q_wu - s * t * q_u * q_w;
  if (std::abs(denom) < 1e-14)
    fail(ErrorCode::PoleHit, "z is in the perturbed spectrum");
  return q_u / denom;
}

Complex weyl_hat(const CMatrix& a, const CVector& u, const CVector& w, Complex s,
                 Complex t, Complex z) {
  Complex q_u = weyl_eval(a, u, z);
  Complex q_w = weyl_eval(a, w, z);
  Complex q_uw = weyl_eval(a, u, w, z);
  Complex q_wu = weyl_eval(a, w, u, z);
  Complex denom = (1.0 + s * q_u) * (1.0 + t * q_w) - s * t * q_uw * q_wu;
  if (std::abs(denom) < 1e-14)
    fail(ErrorCode::PoleHit, "z is in the perturbed spectrum");
  return (q_u * (1.0 + t * q_w) - t * q_uw * q_wu) / denom;
}

Complex weyl_tilde_selfadjoint(Complex q_u, Complex m, Complex s, Complex t,
                               Complex z) {
  Complex inv = (1.0 - s) * (1.0 - t) / q_u + (s + t - s * t) * z + s * t * m;
  if (std::abs(inv) < 1e-300)
    fail(ErrorCode::PoleHit, "z is in the perturbed spectrum");
  return 1.0 / inv;
}

Complex weyl_hat_selfadjoint(Complex q_u, Complex m, Complex s, Complex t,
                             Complex z) {
  Complex denom = (1.0 - t * m + t * z) * q_u - t;
  if (std::abs(denom) < 1e-14)
    fail(ErrorCode::DenominatorVanishes, "inner denominator vanished");
  Complex inv = s + (1.0 + t * (z * z * q_u - m - z)) / denom;
  if (std::abs(inv) < 1e-300)
    fail(ErrorCode::PoleHit, "z is in the perturbed spectrum");
  return 1.0 / inv;
}

Complex weyl_perturbed(const Rank2Perturbation& p, Complex z) {
  if (p.shape == PerturbationShape::General)
    return weyl_rank2_general(p.a, p.u, p.w, p.g, p.h, p.s, p.t, z);
  bool selfadjoint = is_hermitian(p.a);
  double un = norm2(p.u);
  if (selfadjoint && std::abs(un - 1.0) < 1e-10) {
    Complex q_u = weyl_eval(p.a, p.u, z);
    Complex m = moment(p.a, p.u);
    return p.shape == PerturbationShape::Antidiagonal
               ? weyl_tilde_selfadjoint(q_u, m, p.s, p.t, z)
               : weyl_hat_selfadjoint(q_u, m, p.s, p.t, z);
  }
  CVector au = p.a * p.u;
  return p.shape == PerturbationShape::Antidiagonal
             ? weyl_tilde(p.a, p.u, au, p.s, p.t, z)
             : weyl_hat(p.a, p.u, au, p.s, p.t, z);
}

InterlacingCondition interlacing_condition(const CMatrix& a, const CVector& u,
                                           double s, double t) {
  if (!is_hermitian(a)) fail(ErrorCode::NotSelfAdjoint, "A must be self-adjoint");
  if (std::abs(norm2(u) - 1.0) > 1e-10)
    fail(ErrorCode::BadInput, "u must be a unit vector");
  WeylPartialFractions pf = weyl_partial_fractions(a, u, u);
  if (!pf.generic)
    fail(ErrorCode::HypothesisViolated, "some weight c_j vanishes");
  double st = s * t;
  if (std::abs(st - s - t) < 1e-14 * (1.0 + std::abs(st)))
    fail(ErrorCode::HypothesisViolated, "st = s + t is excluded");
  InterlacingCondition out;
  out.m = moment(a, u).real();
  // Singularity of the hyperbola side: (s+t-st) x + stm = 0.
  out.x0 = st * out.m / (st - s - t);
  out.lambda_min = 1e300;
  out.lambda_max = -1e300;
  for (const auto& l : pf.poles) {
    out.lambda_min = std::min(out.lambda_min, l.real());
    out.lambda_max = std::max(out.lambda_max, l.real());
  }
  out.generic = pf.generic;
  out.applies = out.x0 < out.lambda_min || out.x0 > out.lambda_max;
  return out;
}

bool verify_interlacing(std::vector<double> sa, std::vector<double> sb) {
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double spread = 1.0;
  for (double v : sa) spread = std::max(spread, std::abs(v));
  for (double v : sb) spread = std::max(spread, std::abs(v));
  struct Tagged {
    double v;
    int list;
  };
  std::vector<Tagged> merged;
  for (double v : sa) merged.push_back({v, 0});
  for (double v : sb) merged.push_back({v, 1});
  std::sort(merged.begin(), merged.end(),
            [](const Tagged& x, const Tagged& y) { return x.v < y.v; });
  for (std::size_t i = 1; i < merged.size(); ++i)
    if (merged[i].v - merged[i - 1].v <= tol::interlace_tie * spread)
      fail(ErrorCode::DegenerateSpectrum, "tied entries; interlacing undefined");
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 1; i < merged.size(); ++i)
    if (merged[i].list == merged[i - 1].list) return false;
  return true;
}

PhaseTransitionResult phase_transition_check(const CMatrix& a, const CVector& u,
                                             const CVector& w, const CVector& g,
                                             const CVector& h, Complex lambda0,
                                             const std::vector<double>& eps_seq) {
  if (eps_seq.size() < 2)
    fail(ErrorCode::BadInput, "need at least two epsilon values");
  // Jordan chain of length two at lambda0: two eigenvalues within the chain
  // tolerance but geometric multiplicity one (second-smallest singular value
  // of A - lambda0 well separated from zero).
  CVector ev = eigenvalues_dense(a);
  double scale = std::max(max_abs(a), 1e-30);
  int close = 0;
  for (const auto& l : ev)
    if (std::abs(l - lambda0) < 1e-6 * scale) ++close;
  if (close < 2)
    fail(ErrorCode::NoJordanChain, "lambda0 is not a (near-)double eigenvalue");
  CMatrix shifted = a;
  for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= lambda0;
  std::vector<double> sv = singular_values(shifted);
  if (sv.size() >= 2 && sv[sv.size() - 2] < 1e-6 * scale)
    fail(ErrorCode::NoJordanChain,
         "geometric multiplicity at lambda0 exceeds one; no length-2 chain");

  auto probe = [&](Complex z) {
    return weyl_eval(a, u, w, z) + weyl_eval(a, g, h, z);
  };
  std::vector<Complex> est(eps_seq.size());
  for (std::size_t k = 0; k < eps_seq.size(); ++k) {
    double e = eps_seq[k];
    est[k] = -e * e * probe(lambda0 + e);
  }
  // est(eps) is linear in eps to leading order; Richardson over adjacent pairs.
  auto extrapolate = [&](std::size_t i, std::size_t j) {
    double e1 = eps_seq[i], e2 = eps_seq[j];
    return (e1 * est[j] - e2 * est[i]) / (e1 - e2);
  };
  std::size_t last = eps_seq.size() - 1;
  Complex r_prev = extrapolate(last - 1, last);
  Complex value = r_prev;
  if (eps_seq.size() >= 3) {
    Complex r_older = extrapolate(last - 2, last - 1);
    double cscale = std::max({std::abs(r_prev), std::abs(r_older), 1e-12});
    if (std::abs(r_prev - r_older) > 1e-3 * cscale + 1e-10)
      fail(ErrorCode::InconsistentExtrapolation,
           "epsilon extrapolations disagree");
  }
  PhaseTransitionResult out;
  out.split_coefficient = value;
  double vscale = std::abs(value);
  out.degenerate = vscale < 1e-5;
  // Axis tolerance sized to what the estimator can resolve: the resolvent at
  // lambda0 + eps has condition ~ |A|/eps^2 near the defective eigenvalue, so
  // the smallest epsilon in the default schedule leaves ~1e-5 relative noise.
  out.stays_on_axis = value.real() <= 2e-5 * (1.0 + vscale);
  double e = eps_seq[last];
  Complex dplus = probe(lambda0 + Complex(0, e));
  Complex dminus = probe(lambda0 - Complex(0, e));
  double dm = std::max({std::abs(dplus), std::abs(dminus), 1e-300});
  out.direct_test_im_ratio =
      std::max(std::abs(dplus.imag()), std::abs(dminus.imag())) / dm;
  return out;
}

}  // namespace ranktwo
