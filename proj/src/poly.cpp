#include "ranktwo/poly.hpp"

#include <algorithm>

namespace ranktwo {

CPoly::CPoly(CVector coeffs, double strip_rel) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0));
  double scale = 0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  double cut = strip_rel * scale;
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
  if (coeffs_.size() == 1 && std::abs(coeffs_[0]) <= cut) coeffs_[0] = Complex(0);
}

CPoly CPoly::from_roots(const CVector& roots) {
  CVector c{Complex(1)};
  for (const auto& r : roots) {
    CVector next(c.size() + 1, Complex(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return CPoly(std::move(c), 0.0);
}

Complex CPoly::eval(Complex z) const {
  Complex v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + *it;
  return v;
}

CPoly CPoly::derivative() const {
  if (coeffs_.size() == 1) return CPoly();
  CVector d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return CPoly(std::move(d), 0.0);
}

double CPoly::scale() const {
  double s = 0;
  for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

CPoly operator+(const CPoly& a, const CPoly& b) {
  CVector c(std::max(a.coeffs().size(), b.coeffs().size()), Complex(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
  return CPoly(std::move(c));
}

CPoly operator-(const CPoly& a, const CPoly& b) { return a + (Complex(-1) * b); }

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.is_zero() || b.is_zero()) return CPoly();
  CVector c(a.coeffs().size() + b.coeffs().size() - 1, Complex(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return CPoly(std::move(c));
}

CPoly operator*(Complex a, const CPoly& p) {
  CVector c = p.coeffs();
  for (auto& e : c) e *= a;
  return CPoly(std::move(c));
}

PolyDivision divide(const CPoly& a, const CPoly& b) {
  if (b.is_zero()) fail(ErrorCode::BadInput, "polynomial division by zero");
  CVector rem = a.coeffs();
  int db = b.degree();
  int da = static_cast<int>(rem.size()) - 1;
  if (da < db) {
    double rn = 0;
    for (const auto& c : rem) rn = std::max(rn, std::abs(c));
    return {CPoly(), rem, rn};
  }
  CVector q(static_cast<std::size_t>(da - db) + 1, Complex(0));
  Complex lead = b.coeffs().back();
  for (int k = da - db; k >= 0; --k) {
    Complex f = rem[static_cast<std::size_t>(k + db)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db) > 0 ? static_cast<std::size_t>(db) : 1,
             Complex(0));
  double rn = 0;
  for (const auto& c : rem) rn = std::max(rn, std::abs(c));
  return {CPoly(std::move(q)), rem, rn};
}

}  // namespace ranktwo
