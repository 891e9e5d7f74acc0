#include "lattab/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include "lattab/errors.hpp"

namespace lattab {

double min_eigenvalue(const Eigen::Matrix3d& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::vector<LatticePoint> enumerate_ellipsoid(const Eigen::Matrix3d& G, double q_max) {
  std::vector<LatticePoint> out;
  if (!(q_max > 0.0)) return out;
  Eigen::LLT<Eigen::Matrix3d> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::DegenerateBasis, "Gram matrix not positive definite");
  // Q(k) = |U k|^2 with U upper triangular.
  const Eigen::Matrix3d U = llt.matrixU();
  const double qm = q_max * (1.0 + 1e-8);
  const double r = std::sqrt(qm);

  const int k3max = int(std::floor(r / U(2, 2)));
  for (int k3 = -k3max; k3 <= k3max; ++k3) {
    const double t3 = U(2, 2) * k3;
    const double rem3 = qm - t3 * t3;
    if (rem3 < 0) continue;
    const double s3 = std::sqrt(rem3);
    const double c2 = U(1, 2) * k3;
    const int lo2 = int(std::ceil((-s3 - c2) / U(1, 1)));
    const int hi2 = int(std::floor((s3 - c2) / U(1, 1)));
    for (int k2 = lo2; k2 <= hi2; ++k2) {
      const double t2 = U(1, 1) * k2 + c2;
      const double rem2 = rem3 - t2 * t2;
      if (rem2 < 0) continue;
      const double s2 = std::sqrt(rem2);
      const double c1 = U(0, 1) * k2 + U(0, 2) * k3;
      const int lo1 = int(std::ceil((-s2 - c1) / U(0, 0)));
      const int hi1 = int(std::floor((s2 - c1) / U(0, 0)));
      for (int k1 = lo1; k1 <= hi1; ++k1) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        const Eigen::Vector3d k(k1, k2, k3);
        const double q = k.dot(G * k);
        if (q <= qm) out.push_back({{k1, k2, k3}, q});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.k < b.k;
  });
  // Within runs of (relatively) equal q the order is by k, independent of rounding.
  for (std::size_t i = 0; i < out.size();) {
    std::size_t j = i + 1;
    while (j < out.size() && out[j].q - out[j - 1].q <= 1e-9 * out[j].q) ++j;
    std::sort(out.begin() + i, out.begin() + j,
              [](const LatticePoint& a, const LatticePoint& b) { return a.k < b.k; });
    i = j;
  }
  // Cut at q_max, moving the cut into a gap so near-equal values stay together.
  std::size_t n = out.size();
  while (n > 0 && out[n - 1].q > q_max) --n;
  while (n > 0 && n < out.size() && out[n].q - out[n - 1].q <= 1e-9 * out[n].q) --n;
  out.resize(n);
  return out;
}

}  // namespace lattab
