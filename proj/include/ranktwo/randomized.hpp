#pragma once

#include <random>

#include "ranktwo/matrix.hpp"

namespace ranktwo {

/// Seeded generator for reproducible random instances (tests and CLI share it).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  double real() { return dist_(rng_); }
  Complex value() { return {dist_(rng_), dist_(rng_)}; }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * unif_(rng_);
  }

  CVector vector(std::size_t n) {
    CVector v(n);
    for (auto& e : v) e = value();
    return v;
  }
  CVector unit_vector(std::size_t n) { return normalized(vector(n)); }

  CMatrix matrix(std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = value();
    return m;
  }

  CMatrix hermitian(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = real();
      for (std::size_t j = i + 1; j < n; ++j) {
        Complex v = value();
        m(i, j) = v;
        m(j, i) = std::conj(v);
      }
    }
    return m;
  }

  CMatrix real_matrix(std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = real();
    return m;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> dist_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace ranktwo
