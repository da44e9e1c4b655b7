#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ranktwo/randomized.hpp"
#include "ranktwo/weyl.hpp"

using namespace ranktwo;

namespace {
CMatrix diag1234() { return CMatrix::diagonal({1.0, 2.0, 3.0, 4.0}); }
CVector half_ones() { return CVector(4, Complex(0.5, 0)); }
}  // namespace

TEST_CASE("weyl_eval hand sum on diag(1,2,3,4)") {
  // sum 0.25/(0 - j) over j=1..4 = -(25/48)
  Complex v = weyl_eval(diag1234(), half_ones(), half_ones(), Complex(0));
  CHECK(std::abs(v - Complex(-25.0 / 48.0, 0)) < 1e-14);
}

TEST_CASE("weyl_eval of the zero matrix is 1/z") {
  CMatrix zero(5, 5);
  RandomSource rsrc(3);
  CVector u = rsrc.unit_vector(5);
  for (Complex z : {Complex(2, 1), Complex(-0.3, 0.8), Complex(0, 5)})
    CHECK(std::abs(weyl_eval(zero, u, z) - 1.0 / z) < 1e-13);
}

TEST_CASE("weyl_eval throws PoleHit on the spectrum") {
  CHECK_THROWS_AS(weyl_eval(diag1234(), half_ones(), Complex(2.0)), Error);
}

TEST_CASE("direct and partial-fraction modes agree") {
  RandomSource rsrc(5);
  CMatrix a = rsrc.matrix(6, 6);
  CVector u = rsrc.vector(6), w = rsrc.vector(6);
  WeylPartialFractions pf = weyl_partial_fractions(a, u, w);
  for (int k = 0; k < 20; ++k) {
    Complex z = Complex(6.0, 1.0) + 2.0 * rsrc.value();
    CHECK(std::abs(pf.eval(z) - weyl_eval(a, u, w, z)) < 1e-10);
  }
}

TEST_CASE("partial fractions: weights and genericity flags") {
  WeylPartialFractions pf =
      weyl_partial_fractions(CMatrix::diagonal({1.0, 2.0}), {1.0, 0.0}, {1.0, 0.0});
  REQUIRE(pf.poles.size() == 2);
  // c = (1, 0), non-generic
  double c_at_1 = 0, c_at_2 = 0;
  for (std::size_t j = 0; j < 2; ++j)
    (std::abs(pf.poles[j] - 1.0) < 1e-9 ? c_at_1 : c_at_2) =
        std::abs(pf.weights[j]);
  CHECK(c_at_1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c_at_2 < 1e-10);
  CHECK(!pf.generic);

  WeylPartialFractions uniform =
      weyl_partial_fractions(diag1234(), half_ones(), half_ones());
  for (const auto& c : uniform.weights) {
    CHECK(std::abs(c.imag()) < 1e-12);
    CHECK(c.real() == doctest::Approx(0.25).epsilon(1e-10));
  }
  CHECK(uniform.generic);
}

TEST_CASE("partial fractions on Hermitian: nonnegative weights summing to 1") {
  RandomSource rsrc(7);
  CMatrix a = rsrc.hermitian(6);
  CVector u = rsrc.unit_vector(6);
  WeylPartialFractions pf = weyl_partial_fractions(a, u, u);
  Complex sum = 0;
  for (const auto& c : pf.weights) {
    CHECK(c.real() > -1e-12);
    CHECK(std::abs(c.imag()) < 1e-10);
    sum += c;
  }
  CHECK(std::abs(sum - 1.0) < 1e-10);
}

TEST_CASE("degenerate spectrum rejected") {
  CHECK_THROWS_AS(weyl_partial_fractions(CMatrix::identity(3), {1.0, 0.0, 0.0},
                                         {1.0, 0.0, 0.0}),
                  Error);
}

TEST_CASE("Q_{Au,u} = z Q_u - 1") {
  CHECK(identity_qau_u_residual(diag1234(), half_ones(), Complex(10)) < 1e-10);

  CMatrix zero(4, 4);
  RandomSource rsrc(9);
  CVector u = rsrc.unit_vector(4);
  CHECK(identity_qau_u_residual(zero, u, Complex(1.5, 0.5)) < 1e-14);

  CMatrix a = rsrc.matrix(5, 5);
  CVector u5 = rsrc.unit_vector(5);
  CHECK(identity_qau_u_residual(a, u5, Complex(3, 4)) < 1e-10);
}

TEST_CASE("Q_{Au} = z^2 Q_u - z - m (self-adjoint)") {
  // A = diag(1,-1), u = e1: m = 1, both sides equal 1/(z-1).
  CMatrix a = CMatrix::diagonal({1.0, -1.0});
  CHECK(identity_qau_residual(a, {1.0, 0.0}, Complex(0.7, 0.3)) < 1e-14);

  CMatrix zero(3, 3);
  RandomSource rsrc(11);
  CVector u = rsrc.unit_vector(3);
  CHECK(identity_qau_residual(zero, u, Complex(2, 1)) < 1e-14);

  CMatrix h = rsrc.hermitian(8);
  CVector u8 = rsrc.unit_vector(8);
  CHECK(identity_qau_residual(h, u8, Complex(2, 1)) < 1e-10);

  CHECK_THROWS_AS(identity_qau_residual(rsrc.matrix(3, 3), u, Complex(2, 1)),
                  Error);
}

TEST_CASE("both identities over 100 random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomSource rsrc(1000 + seed);
    std::size_t n = 3 + seed % 5;
    CMatrix a = rsrc.matrix(n, n);
    CVector u = rsrc.unit_vector(n);
    Complex z = Complex(0, 4.0) + rsrc.value();  // stays off desk-scale spectra
    CHECK(identity_qau_u_residual(a, u, z) < 1e-10);
    CMatrix h = rsrc.hermitian(n);
    CHECK(identity_qau_residual(h, u, z) < 1e-10);
  }
}

TEST_CASE("Herglotz sign and 1/z tail for self-adjoint A") {
  RandomSource rsrc(13);
  CMatrix h = rsrc.hermitian(7);
  CVector u = rsrc.unit_vector(7);
  for (int k = 0; k < 20; ++k) {
    Complex z(rsrc.real() * 3.0, 0.1 + 2.0 * std::abs(rsrc.real()));
    CHECK(weyl_eval(h, u, z).imag() < 0);
  }
  Complex far(1e6, 0);
  CHECK(std::abs(far * weyl_eval(h, u, far) - 1.0) < 1e-4);
}

TEST_CASE("moment m = <u, Au>") {
  CHECK(std::abs(moment(diag1234(), half_ones()) - Complex(2.5)) < 1e-14);
  RandomSource rsrc(15);
  CMatrix h = rsrc.hermitian(5);
  CHECK(std::abs(moment(h, rsrc.unit_vector(5)).imag()) < 1e-12);
}

TEST_CASE("resolvent identity z Q_{u,Au} = m + Q_{Au} for any A") {
  RandomSource rsrc(21);
  for (std::size_t n : {3u, 6u}) {
    CMatrix a = rsrc.matrix(n, n);
    CVector u = rsrc.unit_vector(n);
    CVector au = a * u;
    Complex m = moment(a, u);
    for (int k = 0; k < 5; ++k) {
      Complex z(2.0 * rsrc.real(), 3.0 + std::abs(rsrc.real()));
      Complex lhs = z * weyl_eval(a, u, au, z);
      Complex rhs = m + weyl_eval(a, au, au, z);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}
