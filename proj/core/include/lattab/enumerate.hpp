#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace lattab {

struct LatticePoint {
  std::array<int, 3> k;
  double q;  // k^T G k
};

// All nonzero integer vectors with k^T G k <= q_max, sorted by (q, k).
// The cut never separates values closer than 1e-9 relative, so that
// symmetry-related points (equal q up to rounding) are kept or dropped together.
std::vector<LatticePoint> enumerate_ellipsoid(const Eigen::Matrix3d& G, double q_max);

// Smallest eigenvalue of G; bounds |k_i|^2 <= Q(k) / lambda_min.
double min_eigenvalue(const Eigen::Matrix3d& G);

}  // namespace lattab
