#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ranktwo {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Failure modes surfaced by the numerical kernels. Carried by Error so
/// callers can branch on the reason without parsing messages.
enum class ErrorCode {
  SingularMatrix,
  NoConvergence,
  PoleHit,
  DegenerateSpectrum,
  NotSelfAdjoint,
  DegenerateDirections,
  HypothesisViolated,
  ComplexSpectrum,
  NoJordanChain,
  InconsistentExtrapolation,
  ScalarMultipleCase,
  SingularB,
  InvalidParams,
  UnsupportedRegion,
  DenominatorVanishes,
  NonConvergentExtrapolation,
  UndefinedRange,
  BadInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

namespace tol {
// Project-wide tolerances. Each constant is referenced where the contract
// that fixes it lives.
inline constexpr double pivot_rel = 1e-12;        // LU pivot vs max row norm
inline constexpr double poly_strip_rel = 1e-12;   // trailing-coefficient strip
inline constexpr double root_cluster_rel = 1e-6;  // multiple-root clustering
inline constexpr double genericity = 1e-10;       // |c_j| > this is "generic"
inline constexpr double eig_simple_gap_rel = 1e-8;    // simple-spectrum gap
inline constexpr double real_spectrum = 1e-8;         // |Im z| < this*(1+|z|)
inline constexpr double interlace_tie = 1e-9;         // tied entries rejected
inline constexpr double scalar_multiple_sin = 1e-10;  // B*v parallel to u
inline constexpr double orth_branch = 1e-10;          // |u*B^-1 v| branch cut
inline constexpr double meixner_predicate = 1e-10;    // c=1, gamma=a, ...
inline constexpr double atom_mass = 1e-6;             // detector threshold
inline constexpr double pole_mask = 1e-4;             // CLI pole neighborhood
}  // namespace tol

inline constexpr int kJacobiTruncationDefault = 500;

// Inner product, linear in the first slot: <x,y> = sum x_i conj(y_i).
inline Complex inner(const CVector& x, const CVector& y) {
  Complex s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double norm2(const CVector& x) { return std::sqrt(std::abs(inner(x, x))); }

inline CVector scaled(CVector x, Complex a) {
  for (auto& e : x) e *= a;
  return x;
}

inline CVector normalized(const CVector& x) {
  double n = norm2(x);
  if (n == 0.0) fail(ErrorCode::BadInput, "cannot normalize zero vector");
  return scaled(x, 1.0 / n);
}

inline bool all_finite(const CVector& x) {
  for (const auto& e : x)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

}  // namespace ranktwo
