#include "ranktwo/matrix.hpp"

#include <algorithm>

namespace ranktwo {

namespace {
void check_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::BadInput, "matrix shape mismatch");
}
}  // namespace

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  check_same_shape(a, b);
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  check_same_shape(a, b);
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::BadInput, "matrix product shape mismatch");
  CMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Complex aik = a(i, k);
      if (aik == Complex(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix operator*(Complex a, const CMatrix& m) {
  CMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = a * m(i, j);
  return r;
}

CVector operator*(const CMatrix& m, const CVector& x) {
  if (m.cols() != x.size()) fail(ErrorCode::BadInput, "matrix-vector shape mismatch");
  CVector y(m.rows(), Complex(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CMatrix outer(const CVector& u, const CVector& v) {
  CMatrix r(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

double max_abs(const CMatrix& m) {
  double v = 0;
  for (const auto& e : m.data()) v = std::max(v, std::abs(e));
  return v;
}

double frobenius(const CMatrix& m) {
  double s = 0;
  for (const auto& e : m.data()) s += std::norm(e);
  return std::sqrt(s);
}

bool is_hermitian(const CMatrix& m, double tolerance) {
  if (!m.square()) return false;
  double scale = std::max(1.0, max_abs(m));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tolerance * scale) return false;
  return true;
}

bool all_finite(const CMatrix& m) {
  for (const auto& e : m.data())
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

}  // namespace ranktwo
