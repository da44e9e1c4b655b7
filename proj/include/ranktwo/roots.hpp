#pragma once

#include "ranktwo/poly.hpp"

namespace ranktwo {

/// All roots of p with multiplicity. Aberth-Ehrlich simultaneous iteration
/// with a companion-matrix QR fallback when the iteration stalls or leaves
/// large residuals. Throws NoConvergence only if both paths fail.
CVector poly_roots(const CPoly& p);

/// Roots grouped within tol::root_cluster_rel * spread (single linkage).
/// With the polynomial supplied, the per-root Newton correction n|p/p'|
/// widens the radius so numerically split multiple roots group correctly.
struct RootCluster {
  Complex center;
  int multiplicity;
};
std::vector<RootCluster> cluster_roots(const CVector& roots,
                                       const CPoly* p = nullptr);

}  // namespace ranktwo
