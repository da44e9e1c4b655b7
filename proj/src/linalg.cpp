#include "ranktwo/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace ranktwo {

namespace {

struct LU {
  CMatrix lu;
  std::vector<std::size_t> perm;
};

// Partial-pivot LU. pivot_floor is an absolute threshold below which the
// factorization is declared singular.
LU lu_factor(const CMatrix& m, double pivot_floor) {
  if (!m.square()) fail(ErrorCode::BadInput, "LU requires a square matrix");
  std::size_t n = m.rows();
  LU f{m, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= pivot_floor)
      fail(ErrorCode::SingularMatrix, "pivot below tolerance in LU");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex l = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

CVector lu_solve(const LU& f, const CVector& b) {
  std::size_t n = f.perm.size();
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

double pivot_floor_for(const CMatrix& m) {
  double max_row = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    max_row = std::max(max_row, s);
  }
  return tol::pivot_rel * std::max(max_row, 1e-300);
}

// Complex Givens rotation zeroing b: G [a;b] = [r;0] with G = [[c, s],[-conj(s), c]],
// c real.
struct Givens {
  double c;
  Complex s;
};

Givens make_givens(Complex a, Complex b, Complex& r) {
  if (b == Complex(0)) {
    r = a;
    return {1.0, Complex(0)};
  }
  if (a == Complex(0)) {
    r = std::abs(b);
    return {0.0, std::conj(b) / std::abs(b)};
  }
  double t = std::hypot(std::abs(a), std::abs(b));
  Complex sgn = a / std::abs(a);
  r = sgn * t;
  return {std::abs(a) / t, sgn * std::conj(b) / t};
}

// Upper-Hessenberg reduction by Householder reflectors, in place.
void hessenberg(CMatrix& h) {
  std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::norm(h(i, k));
    scale = std::sqrt(scale);
    if (scale == 0) continue;
    Complex a = h(k + 1, k);
    Complex alpha = (a == Complex(0)) ? Complex(-scale) : -(a / std::abs(a)) * scale;
    CVector v(n, Complex(0));
    v[k + 1] = a - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vn2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) vn2 += std::norm(v[i]);
    if (vn2 == 0) continue;
    // H = I - 2 v v^* / |v|^2, applied from both sides.
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vn2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vn2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex(0);
  }
}

// Wilkinson shift: eigenvalue of the trailing 2x2 closest to h(m,m).
Complex wilkinson_shift(const CMatrix& h, std::size_t m) {
  Complex a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
  Complex tr = a + d;
  Complex det = a * d - b * c;
  Complex disc = std::sqrt(tr * tr - 4.0 * det);
  Complex l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace

CVector solve_linear(const CMatrix& m, const CVector& b) {
  if (m.rows() != b.size()) fail(ErrorCode::BadInput, "solve: shape mismatch");
  return lu_solve(lu_factor(m, pivot_floor_for(m)), b);
}

CMatrix inverse(const CMatrix& m) {
  LU f = lu_factor(m, pivot_floor_for(m));
  std::size_t n = m.rows();
  CMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector e(n, Complex(0));
    e[j] = 1.0;
    CVector x = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  return inv;
}

CVector eigenvalues_dense(const CMatrix& m) {
  if (!m.square()) fail(ErrorCode::BadInput, "eigenvalues need a square matrix");
  std::size_t n = m.rows();
  if (n == 0) return {};
  if (n == 1) return {m(0, 0)};
  CMatrix h = m;
  hessenberg(h);
  CVector values;
  values.reserve(n);
  const double eps = 1e-15;
  std::size_t hi = n - 1;
  int iter_total = 0;
  const int cap = 60 * static_cast<int>(n);
  int since_deflation = 0;
  while (true) {
    // Deflate converged trailing eigenvalues.
    while (hi > 0) {
      double small =
          eps * (std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi)) + 1e-300);
      if (std::abs(h(hi, hi - 1)) <= small) {
        h(hi, hi - 1) = 0;
        values.push_back(h(hi, hi));
        --hi;
        since_deflation = 0;
      } else {
        break;
      }
    }
    if (hi == 0) {
      values.push_back(h(0, 0));
      break;
    }
    // Find the active block [lo..hi].
    std::size_t lo = hi;
    while (lo > 0) {
      double small =
          eps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)) + 1e-300);
      if (std::abs(h(lo, lo - 1)) <= small) {
        h(lo, lo - 1) = 0;
        break;
      }
      --lo;
    }
    if (++iter_total > cap)
      fail(ErrorCode::NoConvergence, "QR iteration cap exceeded");
    Complex shift = wilkinson_shift(h, hi);
    if (++since_deflation % 12 == 0) {
      // Exceptional shift to break limit cycles.
      shift = h(hi, hi) + Complex(std::abs(h(hi, hi - 1)), 0) * 1.37;
    }
    // One explicit single-shift QR sweep on the active block:
    // QR-factor (H - shift I) by Givens rows, multiply back as R Q, re-add shift.
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
    std::vector<Givens> rots(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      Complex r;
      Givens g = make_givens(h(k, k), h(k + 1, k), r);
      rots[k - lo] = g;
      h(k, k) = r;
      h(k + 1, k) = 0;
      for (std::size_t j = k + 1; j < n; ++j) {
        Complex t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = g.c * t1 + g.s * t2;
        h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens& g = rots[k - lo];
      std::size_t imax = std::min(hi, k + 1);
      for (std::size_t i = 0; i <= imax; ++i) {
        Complex t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = g.c * t1 + std::conj(g.s) * t2;
        h(i, k + 1) = -g.s * t1 + g.c * t2;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  std::reverse(values.begin(), values.end());
  return values;
}

std::vector<double> eigenvalues_hermitian(const CMatrix& m) {
  if (!is_hermitian(m)) fail(ErrorCode::NotSelfAdjoint, "matrix is not Hermitian");
  CVector ev = eigenvalues_dense(m);
  std::vector<double> out(ev.size());
  double scale = std::max(1.0, max_abs(m));
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i].imag()) > 1e-9 * scale)
      fail(ErrorCode::ComplexSpectrum, "Hermitian eigenvalue came out complex");
    out[i] = ev[i].real();
  }
  std::sort(out.begin(), out.end());
  return out;
}

EigenSystem eigen_system(const CMatrix& m) {
  std::size_t n = m.rows();
  EigenSystem sys;
  sys.values = eigenvalues_dense(m);
  sys.vectors = CMatrix(n, n);
  double scale = std::max(max_abs(m), 1e-30);
  for (std::size_t j = 0; j < n; ++j) {
    // Inverse iteration at a slightly perturbed shift.
    Complex mu = sys.values[j] + Complex(scale * 1e-11, scale * 0.7e-11);
    CMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mu;
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = Complex(std::cos(1.0 + 2.0 * static_cast<double>(i + 7 * j)),
                     std::sin(0.5 + static_cast<double>(3 * i + j)));
    x = normalized(x);
    for (int it = 0; it < 3; ++it) {
      CVector y;
      try {
        y = solve_linear(shifted, x);
      } catch (const Error&) {
        break;  // shift landed on the eigenvalue; keep the current iterate
      }
      x = normalized(y);
    }
    for (std::size_t i = 0; i < n; ++i) sys.vectors(i, j) = x[i];
  }
  return sys;
}

CharSystem char_system(const CMatrix& m) {
  if (!m.square()) fail(ErrorCode::BadInput, "char_system needs a square matrix");
  std::size_t n = m.rows();
  CharSystem cs;
  cs.adjugate.assign(n, CMatrix());
  CVector coeffs(n + 1, Complex(0));
  coeffs[n] = 1.0;
  // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I.
  CMatrix mk = CMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    cs.adjugate[n - k] = mk;  // adj(zI-A) = sum_k M_k z^{n-k}
    CMatrix am = m * mk;
    Complex trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    Complex c = -trace / static_cast<double>(k);
    coeffs[n - k] = c;
    if (k < n) {
      mk = am;
      for (std::size_t i = 0; i < n; ++i) mk(i, i) += c;
    }
  }
  cs.det = CPoly(std::move(coeffs), 0.0);
  return cs;
}

CPoly char_poly(const CMatrix& m) { return char_system(m).det; }

CPoly adjugate_form(const CharSystem& cs, const CVector& x, const CVector& y) {
  CVector coeffs(cs.adjugate.size(), Complex(0));
  for (std::size_t k = 0; k < cs.adjugate.size(); ++k) {
    CVector mx = cs.adjugate[k] * x;
    coeffs[k] = inner(mx, y);  // y^* M_k x
  }
  return CPoly(std::move(coeffs));
}

ScaledAdjugate ScaledAdjugate::make(const CMatrix& a) {
  ScaledAdjugate out;
  double f = frobenius(a);
  out.rho = f > 0 ? f / std::sqrt(static_cast<double>(a.rows())) : 1.0;
  out.cs = char_system((1.0 / out.rho) * a);
  return out;
}

CPoly ScaledAdjugate::form(const CVector& x, const CVector& y) const {
  return adjugate_form(cs, x, y);
}

CPoly unscale_poly(const CPoly& p, double rho, int homogeneity) {
  CVector c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] *= std::pow(rho, homogeneity - static_cast<int>(k));
  return CPoly(std::move(c));
}

std::vector<double> singular_values(const CMatrix& m) {
  CMatrix gram = adjoint(m) * m;
  std::vector<double> ev = eigenvalues_hermitian(gram);
  std::vector<double> sv(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i)
    sv[ev.size() - 1 - i] = std::sqrt(std::max(0.0, ev[i]));
  return sv;
}

double match_distance(CVector a, CVector b) {
  if (a.size() != b.size())
    fail(ErrorCode::BadInput, "match_distance: size mismatch");
  double worst = 0;
  for (const auto& x : a) {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = std::abs(x - b[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    worst = std::max(worst, bd);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace ranktwo
