#pragma once

#include <cstddef>

#include "ranktwo/common.hpp"

namespace ranktwo {

/// Dense complex matrix, row-major. Plain value type; everything built on it
/// is a free function so the algorithms read like the math.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0)) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(const CVector& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const CVector& data() const { return data_; }

  bool square() const { return rows_ == cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  CVector data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex a, const CMatrix& m);

CVector operator*(const CMatrix& m, const CVector& x);

/// u v^*  (rank-one; as an operator f -> <f,v> u).
CMatrix outer(const CVector& u, const CVector& v);

CMatrix adjoint(const CMatrix& m);

double max_abs(const CMatrix& m);
double frobenius(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tolerance = 1e-10);
bool all_finite(const CMatrix& m);

}  // namespace ranktwo
