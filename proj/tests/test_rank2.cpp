#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ranktwo/randomized.hpp"
#include "ranktwo/rank_two.hpp"
#include "ranktwo/roots.hpp"

using namespace ranktwo;

namespace {

CMatrix diag1234() { return CMatrix::diagonal({1.0, 2.0, 3.0, 4.0}); }
CVector half_ones() { return CVector(4, Complex(0.5, 0)); }

// 4x4 real matrix with a length-2 Jordan chain at +i and at -i.
CMatrix two_chain_at_i() {
  CMatrix a(4, 4);
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  a(2, 3) = 1.0;
  a(3, 2) = -1.0;
  a(0, 2) = 1.0;
  a(1, 3) = 1.0;
  return a;
}

// Quadratic Laurent coefficient matrix N = lim (z-l0)^2 (z-A)^{-1}, probed
// numerically; the oracle for the splitting coefficient.
CMatrix nilpotent_part(const CMatrix& a, Complex lambda0) {
  Complex z = lambda0 + Complex(1e-5, 0);
  CMatrix shifted = a;
  std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) = z - a(i, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) shifted(i, j) = -a(i, j);
  CMatrix resolvent = inverse(shifted);
  return (Complex(1e-10, 0)) * resolvent;
}

}  // namespace

TEST_CASE("perturbed_char_poly reduces to char_poly at s = t = 0") {
  RandomSource rsrc(1);
  CMatrix a = rsrc.matrix(5, 5);
  Rank2Perturbation p = Rank2Perturbation::general(
      a, rsrc.vector(5), rsrc.vector(5), rsrc.vector(5), rsrc.vector(5), 0.0, 0.0);
  CPoly lhs = perturbed_char_poly(p);
  CPoly rhs = char_poly(a);
  REQUIRE(lhs.degree() == rhs.degree());
  for (int k = 0; k <= lhs.degree(); ++k)
    CHECK(std::abs(lhs.coeffs()[k] - rhs.coeffs()[k]) < 1e-10);
}

TEST_CASE("worked antidiagonal example: spectrum to two decimals") {
  Rank2Perturbation p =
      Rank2Perturbation::antidiagonal(diag1234(), half_ones(), 1.1, 1.2);
  CVector roots = poly_roots(perturbed_char_poly(p));
  CVector want{-3.25, 1.38, 2.50, 3.61};
  CHECK(match_distance(roots, want) < 0.01);
  CHECK(match_distance(roots, eigenvalues_dense(materialize(p))) < 1e-9);
}

TEST_CASE("factorization matches the dense eigensolver on random instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomSource rsrc(50 + seed);
    std::size_t n = 2 + seed % 7;
    Rank2Perturbation p = Rank2Perturbation::general(
        rsrc.matrix(n, n), rsrc.vector(n), rsrc.vector(n), rsrc.vector(n),
        rsrc.vector(n), Complex(0.7, 0), Complex(-1.3, 0));
    CPoly cp = perturbed_char_poly(p);
    REQUIRE(cp.degree() == static_cast<int>(n));
    CHECK(match_distance(poly_roots(cp), eigenvalues_dense(materialize(p))) < 1e-8);
  }
}

TEST_CASE("spectrum criterion: R_{s,t} vanishes exactly at perturbed eigenvalues") {
  RandomSource rsrc(77);
  std::size_t n = 6;
  CMatrix a = rsrc.matrix(n, n);
  CVector u = rsrc.vector(n), w = rsrc.vector(n), g = rsrc.vector(n),
          h = rsrc.vector(n);
  Complex s(0.9, 0.2), t(-0.6, 0.4);
  Rank2Perturbation p = Rank2Perturbation::general(a, u, w, g, h, s, t);
  CVector ev = eigenvalues_dense(materialize(p));
  for (const auto& z : ev) {
    Complex q_uw = weyl_eval(a, u, w, z), q_gh = weyl_eval(a, g, h, z);
    Complex q_gw = weyl_eval(a, g, w, z), q_uh = weyl_eval(a, u, h, z);
    Complex r = 1.0 + s * q_uw + t * q_gh + s * t * q_gh * q_uw - s * t * q_gw * q_uh;
    CHECK(std::abs(r) < 1e-7);
  }
  // and R != 0 well away from the spectrum
  Complex zfar(40.0, 3.0);
  Complex r = 1.0 + s * weyl_eval(a, u, w, zfar) + t * weyl_eval(a, g, h, zfar) +
              s * t * weyl_eval(a, g, h, zfar) * weyl_eval(a, u, w, zfar) -
              s * t * weyl_eval(a, g, w, zfar) * weyl_eval(a, u, h, zfar);
  CHECK(std::abs(r - 1.0) < 0.5);
}

TEST_CASE("weyl_perturbed: all closed forms agree with the direct resolvent") {
  RandomSource rsrc(91);
  std::size_t n = 6;
  CMatrix h = rsrc.hermitian(n);
  CVector u = rsrc.unit_vector(n);
  Complex s(1.3, 0), t(-0.4, 0);

  SUBCASE("antidiagonal self-adjoint") {
    Rank2Perturbation p = Rank2Perturbation::antidiagonal(h, u, s, t);
    CMatrix pm = materialize(p);
    for (int k = 0; k < 10; ++k) {
      Complex z(2.0 * rsrc.real(), 1.0 + std::abs(rsrc.real()));
      CHECK(std::abs(weyl_perturbed(p, z) - weyl_eval(pm, u, z)) < 1e-10);
    }
  }
  SUBCASE("diagonal self-adjoint") {
    Rank2Perturbation p = Rank2Perturbation::diagonal(h, u, s, t);
    CMatrix pm = materialize(p);
    for (int k = 0; k < 10; ++k) {
      Complex z(2.0 * rsrc.real(), 1.0 + std::abs(rsrc.real()));
      CHECK(std::abs(weyl_perturbed(p, z) - weyl_eval(pm, u, z)) < 1e-10);
    }
  }
  SUBCASE("general formula, random complex data") {
    CMatrix a = rsrc.matrix(n, n);
    CVector w = rsrc.vector(n), g = rsrc.vector(n), hh = rsrc.vector(n);
    Rank2Perturbation p =
        Rank2Perturbation::general(a, u, w, g, hh, Complex(0.5, 0.7), t);
    CMatrix pm = materialize(p);
    for (int k = 0; k < 10; ++k) {
      Complex z(2.0 * rsrc.real(), 2.0 + std::abs(rsrc.real()));
      CHECK(std::abs(weyl_perturbed(p, z) - weyl_eval(pm, u, z)) < 1e-10);
    }
  }
  SUBCASE("corollary shapes with arbitrary w, non-Hermitian A") {
    CMatrix a = rsrc.matrix(n, n);
    CVector w = rsrc.vector(n);
    for (int k = 0; k < 10; ++k) {
      Complex z(2.0 * rsrc.real(), 2.0 + std::abs(rsrc.real()));
      // tilde: A - s u w^* - t w u^*
      CMatrix tilde = a - (s * outer(u, w)) - (t * outer(w, u));
      CHECK(std::abs(weyl_tilde(a, u, w, s, t, z) - weyl_eval(tilde, u, z)) < 1e-10);
      // hat: A - s u u^* - t w w^*
      CMatrix hat = a - (s * outer(u, u)) - (t * outer(w, w));
      CHECK(std::abs(weyl_hat(a, u, w, s, t, z) - weyl_eval(hat, u, z)) < 1e-10);
    }
  }
  SUBCASE("specializations agree pairwise on their common domain") {
    CVector au = h * u;
    Complex m = moment(h, u);
    for (int k = 0; k < 10; ++k) {
      Complex z(2.0 * rsrc.real(), 1.0 + std::abs(rsrc.real()));
      Complex general =
          weyl_rank2_general(h, u, au, au, u, s, t, z);  // w=Au, g=Au, h=u
      Complex cor = weyl_tilde(h, u, au, s, t, z);
      Complex sa = weyl_tilde_selfadjoint(weyl_eval(h, u, z), m, s, t, z);
      CHECK(std::abs(general - cor) < 1e-10);
      CHECK(std::abs(cor - sa) < 1e-10);
      Complex general_hat = weyl_rank2_general(h, u, u, au, au, s, t, z);
      Complex cor_hat = weyl_hat(h, u, au, s, t, z);
      Complex sa_hat = weyl_hat_selfadjoint(weyl_eval(h, u, z), m, s, t, z);
      CHECK(std::abs(general_hat - cor_hat) < 1e-10);
      CHECK(std::abs(cor_hat - sa_hat) < 1e-10);
    }
  }
}

TEST_CASE("limit polynomial q: boundary and Jordan cases") {
  SUBCASE("n = 2 gives a constant") {
    RandomSource rsrc(3);
    Rank2Perturbation p = Rank2Perturbation::general(
        rsrc.matrix(2, 2), rsrc.vector(2), rsrc.vector(2), rsrc.vector(2),
        rsrc.vector(2), 1.0, 1.0);
    LimitPolynomial lim = limit_polynomial_q(p);
    CHECK(lim.q.degree() == 0);
    CHECK(lim.roots.empty());
  }
  SUBCASE("Jordan block example has degree n - 2") {
    // A = J_2(0) + J_1(2), u = w = e1, g = h = e2: q(z) = z - 2 up to scale.
    CMatrix a(3, 3);
    a(0, 1) = 1.0;
    a(2, 2) = 2.0;
    CVector e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0};
    Rank2Perturbation p = Rank2Perturbation::general(a, e1, e1, e2, e2, 1.0, 1.0);
    LimitPolynomial lim = limit_polynomial_q(p);
    REQUIRE(lim.q.degree() == 1);
    CHECK(std::abs(lim.roots[0] - 2.0) < 1e-9);
  }
  SUBCASE("degenerate directions rejected") {
    CMatrix a = CMatrix::diagonal({1.0, 2.0, 3.0});
    CVector e1{1.0, 0.0, 0.0};
    // u = g, w = h makes the 2x2 minor vanish identically.
    Rank2Perturbation p = Rank2Perturbation::general(a, e1, e1, e1, e1, 1.0, 1.0);
    CHECK_THROWS_AS(limit_polynomial_q(p), Error);
  }
}

TEST_CASE("limit polynomial roots are the finite large-r eigenvalue limits") {
  RandomSource rsrc(7);
  std::size_t n = 7;
  CMatrix a = rsrc.matrix(n, n);
  CVector u = rsrc.unit_vector(n), w = rsrc.unit_vector(n),
          g = rsrc.unit_vector(n), h = rsrc.unit_vector(n);
  Rank2Perturbation p = Rank2Perturbation::general(a, u, w, g, h, 0, 0);
  LimitPolynomial lim = limit_polynomial_q(p);
  REQUIRE(lim.q.degree() == static_cast<int>(n) - 2);
  double r = 1e6;
  CMatrix big = a - (Complex(r) * outer(u, w)) - (Complex(r) * outer(g, h));
  CVector ev = eigenvalues_dense(big);
  CVector finite;
  for (const auto& l : ev)
    if (std::abs(l) < 1e3) finite.push_back(l);
  REQUIRE(finite.size() == n - 2);
  CHECK(match_distance(finite, lim.roots) < 1e-3);
}

TEST_CASE("asymptotic spectrum") {
  SUBCASE("fully orthogonal directions flag the degenerate case") {
    CMatrix a = CMatrix::diagonal({1.0, 2.0, 3.0, 4.0, 5.0});
    CVector e1{1.0, 0, 0, 0, 0}, e2{0, 1.0, 0, 0, 0}, e3{0, 0, 1.0, 0, 0},
        e4{0, 0, 0, 1.0, 0};
    Rank2Perturbation p = Rank2Perturbation::general(a, e1, e2, e3, e4, 1.0, 1.0);
    AsymptoticSpectrum asym = asymptotic_spectrum(p, 1.0, 1.0);
    CHECK(asym.degenerate);
    for (const auto& l : asym.divergent) CHECK(std::abs(l) < 1e-12);
  }
  SUBCASE("orthonormal projections give alpha, beta") {
    CMatrix a = CMatrix::diagonal({1.0, 2.0, 3.0});
    CVector e1{1.0, 0, 0}, e2{0, 1.0, 0};
    Rank2Perturbation p = Rank2Perturbation::general(a, e1, e1, e2, e2, 1.0, 1.0);
    AsymptoticSpectrum asym = asymptotic_spectrum(p, 1.0, 1.0);
    // projections are pulled down by the minus sign in A - r uu^* - r gg^*
    CHECK(match_distance(asym.divergent, {-1.0, -1.0}) < 1e-12);
    CHECK(!asym.degenerate);
  }
  SUBCASE("divergent rates match the large-r eigenvalues") {
    RandomSource rsrc(13);
    std::size_t n = 6;
    CMatrix a = rsrc.matrix(n, n);
    CVector u = rsrc.unit_vector(n), w = rsrc.unit_vector(n),
            g = rsrc.unit_vector(n), h = rsrc.unit_vector(n);
    Rank2Perturbation p = Rank2Perturbation::general(a, u, w, g, h, 0, 0);
    Complex alpha(2.0, 0), beta(-1.0, 0);
    AsymptoticSpectrum asym = asymptotic_spectrum(p, alpha, beta);
    double r = 1e6;
    CMatrix big =
        a - (alpha * Complex(r) * outer(u, w)) - (beta * Complex(r) * outer(g, h));
    CVector ev = eigenvalues_dense(big);
    std::sort(ev.begin(), ev.end(),
              [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
    CVector scaled{ev[0] / r, ev[1] / r};
    CHECK(match_distance(scaled, asym.divergent) < 1e-4);
  }
}

TEST_CASE("interlacing condition: the three worked parameter pairs") {
  CMatrix a = diag1234();
  CVector u = half_ones();
  InterlacingCondition c1 = interlacing_condition(a, u, 1.1, 1.2);
  CHECK(c1.x0 == doctest::Approx(-3.37).epsilon(2e-3));
  CHECK(c1.applies);
  InterlacingCondition c2 = interlacing_condition(a, u, -2.0, -3.0);
  CHECK(c2.x0 == doctest::Approx(1.36).epsilon(3e-3));
  CHECK(!c2.applies);
  InterlacingCondition c3 = interlacing_condition(a, u, 1.1, 0.9);
  CHECK(c3.x0 == doctest::Approx(-2.45).epsilon(3e-3));
  CHECK(c3.applies);
  CHECK((1.0 - 1.1) * (1.0 - 0.9) < 0);  // applies although (1-s)(1-t) < 0
}

TEST_CASE("interlacing condition rejects st = s + t") {
  CHECK_THROWS_AS(interlacing_condition(diag1234(), half_ones(), 2.0, 2.0), Error);
}

TEST_CASE("verify_interlacing") {
  CHECK(verify_interlacing({1, 2, 3, 4}, {-3.25, 1.38, 2.50, 3.61}));
  CHECK(!verify_interlacing({1, 2, 3, 4}, {0.86, 2.16, 3.38, 16.10}));
  CHECK(verify_interlacing({0, 2}, {1, 3}));
  CHECK_THROWS_AS(verify_interlacing({1, 1 + 1e-12}, {0.5, 1.5}), Error);
}

TEST_CASE("interlacing holds whenever the condition applies") {
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomSource rsrc(300 + seed);
    std::size_t n = 3 + seed % 5;
    CMatrix h = rsrc.hermitian(n);
    CVector u = rsrc.unit_vector(n);
    double s = rsrc.uniform(-2.5, 2.5), t = rsrc.uniform(-2.5, 2.5);
    InterlacingCondition cond;
    try {
      cond = interlacing_condition(h, u, s, t);
    } catch (const Error&) {
      continue;
    }
    if (!cond.applies) continue;
    ++applied;
    Rank2Perturbation p = Rank2Perturbation::antidiagonal(h, u, s, t);
    CVector ev = eigenvalues_dense(materialize(p));
    std::vector<double> evr;
    for (const auto& l : ev) {
      CHECK(std::abs(l.imag()) < tol::real_spectrum * (1.0 + std::abs(l)));
      evr.push_back(l.real());
    }
    CHECK(verify_interlacing(eigenvalues_hermitian(h), evr));
  }
  CHECK(applied > 5);
}

TEST_CASE("(1-s)(1-t) > 0 keeps the antidiagonal self-adjoint spectrum real") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource rsrc(900 + seed);
    std::size_t n = 3 + seed % 4;
    CMatrix h = rsrc.hermitian(n);
    CVector u = rsrc.unit_vector(n);
    double s = rsrc.uniform(-3.0, 3.0), t = rsrc.uniform(-3.0, 3.0);
    if ((1.0 - s) * (1.0 - t) <= 1e-3) continue;
    ++checked;
    CVector ev =
        eigenvalues_dense(materialize(Rank2Perturbation::antidiagonal(h, u, s, t)));
    for (const auto& l : ev)
      CHECK(std::abs(l.imag()) < tol::real_spectrum * (1.0 + std::abs(l)));
  }
  CHECK(checked > 10);
}

TEST_CASE("phase transition: degenerate Jordan block at zero") {
  CMatrix a(2, 2);
  a(0, 1) = 1.0;
  CVector e1{1.0, 0.0};
  PhaseTransitionResult r = phase_transition_check(a, e1, e1, e1, e1, Complex(0));
  CHECK(r.stays_on_axis);
  CHECK(r.degenerate);  // split coefficient 0: boundary case
  CHECK(std::abs(r.split_coefficient) < 1e-6);
}

TEST_CASE("phase transition: constructed splitting coefficients at lambda0 = i") {
  CMatrix a = two_chain_at_i();
  Complex lambda0(0, 1);
  CMatrix nil = nilpotent_part(a, lambda0);
  RandomSource rsrc(17);
  CVector u = rsrc.vector(4), w = rsrc.vector(4), g = rsrc.vector(4),
          h = rsrc.vector(4);
  // a2 = w^* N u + h^* N g is the (lambda0 - z)^{-2} Laurent coefficient of
  // Q_uw + Q_gh; the checker's split coefficient is -a2. Rescale the second
  // pair to hit a chosen a2 value.
  Complex base = inner(nil * u, w);
  Complex second = inner(nil * g, h);
  REQUIRE(std::abs(second) > 1e-6);

  auto with_target = [&](Complex a2_target) {
    Complex beta = (a2_target - base) / second;
    CVector h_scaled = scaled(h, std::conj(beta));
    return phase_transition_check(a, u, w, g, h_scaled, lambda0);
  };

  SUBCASE("purely imaginary coefficient reports Stays (real-part rule)") {
    PhaseTransitionResult r = with_target(Complex(0, 1));
    CHECK(std::abs(r.split_coefficient - Complex(0, -1)) < 1e-3);
    CHECK(r.stays_on_axis);
  }
  SUBCASE("negative real a2 (positive split) leaves, eigenvalue probe agrees") {
    PhaseTransitionResult r = with_target(Complex(-1, 0));
    CHECK(std::abs(r.split_coefficient - Complex(1, 0)) < 1e-3);
    CHECK(!r.stays_on_axis);
    // probe the Puiseux law: |Re(z(s) - lambda0 axis)| ~ sqrt(s)
    Complex beta = (Complex(-1, 0) - base) / second;
    CVector h_scaled = scaled(h, std::conj(beta));
    double s = 1e-4;
    CMatrix pm = a - (Complex(s) * outer(u, w)) - (Complex(s) * outer(g, h_scaled));
    CVector ev = eigenvalues_dense(pm);
    std::sort(ev.begin(), ev.end(), [&](Complex x, Complex y) {
      return std::abs(x - lambda0) < std::abs(y - lambda0);
    });
    double re_max = std::max(std::abs(ev[0].real()), std::abs(ev[1].real()));
    CHECK(re_max > 1e-3 * std::sqrt(s));
  }
  SUBCASE("positive real a2 (negative split) stays on the axis") {
    PhaseTransitionResult r = with_target(Complex(1, 0));
    CHECK(std::abs(r.split_coefficient - Complex(-1, 0)) < 1e-3);
    CHECK(r.stays_on_axis);
    Complex beta = (Complex(1, 0) - base) / second;
    CVector h_scaled = scaled(h, std::conj(beta));
    double s = 1e-4;
    CMatrix pm = a - (Complex(s) * outer(u, w)) - (Complex(s) * outer(g, h_scaled));
    CVector ev = eigenvalues_dense(pm);
    std::sort(ev.begin(), ev.end(), [&](Complex x, Complex y) {
      return std::abs(x - lambda0) < std::abs(y - lambda0);
    });
    double re_max = std::max(std::abs(ev[0].real()), std::abs(ev[1].real()));
    CHECK(re_max < 0.01 * std::sqrt(s));
  }
}

TEST_CASE("phase transition requires a Jordan chain") {
  CMatrix a = diag1234();
  CVector u = half_ones();
  CHECK_THROWS_AS(phase_transition_check(a, u, u, u, u, Complex(1.0)), Error);
}
