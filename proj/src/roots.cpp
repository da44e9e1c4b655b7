#include "ranktwo/roots.hpp"

#include <algorithm>

#include "ranktwo/linalg.hpp"

namespace ranktwo {

namespace {

// |p|(r) evaluated with absolute coefficients; the residual scale at r.
double residual_scale(const CPoly& p, double r) {
  double s = 0, rk = 1;
  for (const auto& c : p.coeffs()) {
    s += std::abs(c) * rk;
    rk *= r;
  }
  return std::max(s, 1e-300);
}

bool residuals_ok(const CPoly& p, const CVector& roots, double rel) {
  for (const auto& r : roots) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
    if (std::abs(p.eval(r)) > rel * residual_scale(p, std::abs(r))) return false;
  }
  return true;
}

CVector companion_roots(const CPoly& p) {
  int n = p.degree();
  CMatrix comp(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  Complex lead = p.leading();
  for (int i = 1; i < n; ++i)
    comp(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1.0;
  for (int i = 0; i < n; ++i)
    comp(static_cast<std::size_t>(i), static_cast<std::size_t>(n - 1)) =
        -p.coeffs()[static_cast<std::size_t>(i)] / lead;
  return eigenvalues_dense(comp);
}

CVector aberth(const CPoly& p, bool& converged) {
  int n = p.degree();
  CPoly dp = p.derivative();
  // Initial guesses on a circle around the coefficient centroid.
  Complex center = -p.coeffs()[static_cast<std::size_t>(n - 1)] /
                   (static_cast<double>(n) * p.leading());
  double radius = 0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius,
                      std::pow(std::abs(p.coeffs()[static_cast<std::size_t>(k)] /
                                        p.leading()),
                               1.0 / (n - k)));
  radius = std::max(radius, 1e-3);
  CVector z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * 3.14159265358979323846 * (i + 0.25) / n + 0.4;
    z[static_cast<std::size_t>(i)] =
        center + radius * Complex(std::cos(th), std::sin(th));
  }
  converged = false;
  for (int it = 0; it < 400; ++it) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      Complex zi = z[static_cast<std::size_t>(i)];
      Complex pv = p.eval(zi);
      Complex dv = dp.eval(zi);
      if (pv == Complex(0)) continue;
      Complex ratio = (dv == Complex(0)) ? Complex(0) : pv / dv;
      Complex sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          Complex d = zi - z[static_cast<std::size_t>(j)];
          if (std::abs(d) < 1e-300) d = Complex(1e-300, 0);
          sum += 1.0 / d;
        }
      Complex denom = 1.0 - ratio * sum;
      Complex step = (std::abs(denom) < 1e-300 || dv == Complex(0))
                         ? pv / residual_scale(p, std::abs(zi)) * radius
                         : ratio / denom;
      z[static_cast<std::size_t>(i)] = zi - step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(zi)));
    }
    if (worst < 1e-14) {
      converged = true;
      break;
    }
  }
  return z;
}

}  // namespace

CVector poly_roots(const CPoly& p) {
  if (p.is_zero()) fail(ErrorCode::BadInput, "poly_roots of the zero polynomial");
  if (p.degree() < 1) fail(ErrorCode::BadInput, "poly_roots needs degree >= 1");
  if (p.degree() == 1) return {-p.coeffs()[0] / p.coeffs()[1]};

  bool converged = false;
  CVector roots = aberth(p, converged);
  // Multiple roots stall the per-step criterion near the cluster; accept on
  // residual either way, fall back to the companion matrix otherwise.
  if (residuals_ok(p, roots, 1e-10)) return roots;
  roots = companion_roots(p);
  if (residuals_ok(p, roots, 1e-8)) return roots;
  fail(ErrorCode::NoConvergence, "root finding failed on both paths");
}

std::vector<RootCluster> cluster_roots(const CVector& roots, const CPoly* p) {
  double spread = 1.0;
  for (const auto& r : roots) spread = std::max(spread, std::abs(r));
  double base = tol::root_cluster_rel * spread;
  std::vector<double> radius(roots.size(), base);
  if (p) {
    // First-order root perturbation from coefficient rounding:
    // |droot| ~ eps * sum_k |c_k||z|^k / |p'(z)|. Blows up exactly at
    // multiple roots, which is what lets their numerical split regroup.
    CPoly dp = p->derivative();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      double r = std::abs(roots[i]);
      double scale = 0, rk = 1;
      for (const auto& c : p->coeffs()) {
        scale += std::abs(c) * rk;
        rk *= r;
      }
      double dv = std::abs(dp.eval(roots[i]));
      double bound = dv > 1e-300 ? 10.0 * 2.2e-16 * scale / dv : 0.05 * spread;
      radius[i] = std::min(0.05 * spread, std::max(base, bound));
    }
  }
  // Single linkage.
  std::vector<int> group(roots.size(), -1);
  int ngroups = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = ngroups++;
    std::vector<std::size_t> frontier{i};
    while (!frontier.empty()) {
      std::size_t k = frontier.back();
      frontier.pop_back();
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (group[j] < 0 &&
            std::abs(roots[j] - roots[k]) <= std::max(radius[j], radius[k])) {
          group[j] = group[i];
          frontier.push_back(j);
        }
    }
  }
  std::vector<RootCluster> clusters(static_cast<std::size_t>(ngroups),
                                    RootCluster{Complex(0), 0});
  for (std::size_t i = 0; i < roots.size(); ++i) {
    clusters[static_cast<std::size_t>(group[i])].center += roots[i];
    clusters[static_cast<std::size_t>(group[i])].multiplicity += 1;
  }
  for (auto& c : clusters) c.center /= static_cast<double>(c.multiplicity);
  return clusters;
}

}  // namespace ranktwo
