#include "lattab/lattice.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lattab/errors.hpp"

namespace lattab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::NotConvergent: return "NotConvergent";
    case ErrorKind::Budget: return "Budget";
    case ErrorKind::PoleAt3Halves: return "PoleAt3Halves";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::NoBracket: return "NoBracket";
  }
  return "Unknown";
}

double LatticeParams::c() const { return std::cbrt(2.0) * std::cbrt(volume * volume); }

void LatticeParams::validate() const {
  auto ok = [](double a) { return std::isfinite(a) && a > 0.0; };
  if (!ok(u) || !ok(v) || !ok(volume))
    throw Error(ErrorKind::InvalidParameter, "lattice parameters need u > 0, v > 0, V > 0");
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
    throw Error(ErrorKind::InvalidParameter, "lattice parameters must be finite");
}

LatticeParams LatticeParams::from_moduli(const std::array<double, 5>& q, double volume) {
  return {q[0], q[1], q[2], q[3], q[4], volume};
}

namespace named {
LatticeParams simple_cubic(double volume) { return {std::cbrt(2.0), 1.0, 0.0, 0.0, 0.0, volume}; }
LatticeParams fcc(double volume) { return {1.0, 1.0, 0.0, 0.5, 0.5, volume}; }
LatticeParams bcc(double volume) { return {1.0 / std::cbrt(2.0), 1.0, 0.0, 0.5, 0.5, volume}; }
}  // namespace named

Eigen::Matrix3d Basis3::matrix() const {
  Eigen::Matrix3d M;
  M.col(0) = v1;
  M.col(1) = v2;
  M.col(2) = v3;
  return M;
}

Eigen::Matrix3d Basis3::gram() const {
  const Eigen::Matrix3d M = matrix();
  return M.transpose() * M;
}

Basis3 Basis3::from_matrix(const Eigen::Matrix3d& M) { return {M.col(0), M.col(1), M.col(2)}; }

double quadratic_form(const LatticeParams& L, double m, double n, double p) {
  const double a = m + L.x * n + L.y * p;
  const double b = n + L.z * p;
  return (L.c() / L.u) *
         (a * a + L.v * L.v * b * b + (L.u * L.u * L.u) / (2.0 * L.v * L.v) * p * p);
}

Eigen::Matrix3d gram_matrix(const LatticeParams& L) {
  const Eigen::Matrix3d B = basis(L).matrix();
  return B.transpose() * B;
}

Basis3 basis(const LatticeParams& L) {
  L.validate();
  const double sc = std::sqrt(L.c());
  const double su = std::sqrt(L.u);
  Basis3 b;
  b.v1 = sc * Eigen::Vector3d(1.0 / su, 0.0, 0.0);
  b.v2 = sc * Eigen::Vector3d(L.x / su, L.v / su, 0.0);
  b.v3 = sc * Eigen::Vector3d(L.y / su, L.v * L.z / su, L.u / (L.v * std::sqrt(2.0)));
  return b;
}

LatticeParams params_from_gram(const Eigen::Matrix3d& G) {
  const double det = G.determinant();
  const double scale = G.diagonal().maxCoeff();
  if (!(det > 1e-24 * scale * scale * scale))
    throw Error(ErrorKind::DegenerateBasis, "degenerate Gram matrix");
  LatticeParams L;
  L.volume = std::sqrt(det);
  const double C = L.c();
  L.u = C / G(0, 0);
  L.x = L.u * G(0, 1) / C;
  const double v2 = L.u * G(1, 1) / C - L.x * L.x;
  if (!(v2 > 0.0)) throw Error(ErrorKind::DegenerateBasis, "degenerate Gram matrix");
  L.v = std::sqrt(v2);
  L.y = L.u * G(0, 2) / C;
  L.z = (L.u * G(1, 2) / C - L.x * L.y) / v2;
  return L;
}

LatticeParams params_from_basis(const Basis3& b) {
  const double n1 = b.v1.norm(), n2 = b.v2.norm(), n3 = b.v3.norm();
  const double s = std::max({n1, n2, n3});
  if (!(std::fabs(b.determinant()) >= 1e-12 * s * s * s))
    throw Error(ErrorKind::DegenerateBasis, "basis vectors are (nearly) linearly dependent");
  return params_from_gram(b.gram());
}

Basis3 dual_basis(const Basis3& b) {
  return Basis3::from_matrix(b.matrix().inverse().transpose());
}

namespace {

// Integer vectors k with k^T G k equal to target (relative 1e-10). |k_i| <= sqrt(target (G^{-1})_ii).
std::vector<Eigen::Vector3d> vectors_of_norm(const Eigen::Matrix3d& G, double target) {
  const Eigen::Matrix3d Gi = G.inverse();
  int B[3];
  for (int i = 0; i < 3; ++i) B[i] = int(std::floor(std::sqrt(target * Gi(i, i)) + 1e-9));
  std::vector<Eigen::Vector3d> out;
  for (int m = -B[0]; m <= B[0]; ++m)
    for (int n = -B[1]; n <= B[1]; ++n)
      for (int p = -B[2]; p <= B[2]; ++p) {
        const Eigen::Vector3d k(m, n, p);
        if (std::fabs(k.dot(G * k) - target) <= 1e-10 * target) out.push_back(k);
      }
  return out;
}

// The named parameter point isometric to L, if there is one.
std::optional<LatticeParams> named_equivalent(const LatticeParams& L) {
  const Eigen::Matrix3d G = gram_matrix(L);
  for (const auto& N : {named::simple_cubic(L.volume), named::fcc(L.volume), named::bcc(L.volume)}) {
    const Eigen::Matrix3d Gn = gram_matrix(N);
    const auto c0 = vectors_of_norm(G, Gn(0, 0));
    const auto c1 = vectors_of_norm(G, Gn(1, 1));
    const auto c2 = vectors_of_norm(G, Gn(2, 2));
    for (const auto& a : c0)
      for (const auto& b : c1)
        for (const auto& c : c2) {
          Eigen::Matrix3d U;
          U << a, b, c;
          if (((U.transpose() * G * U) - Gn).cwiseAbs().maxCoeff() <= 1e-10 * Gn.cwiseAbs().maxCoeff()) return N;
        }
  }
  return std::nullopt;
}

}  // namespace

// The named points come back in their canonical coordinates; anything else in
// the coordinates of the inverse-transpose basis.
LatticeParams dual(const LatticeParams& L) {
  const LatticeParams D = params_from_basis(dual_basis(basis(L)));
  if (auto n = named_equivalent(D)) return *n;
  return D;
}

bool gram_equivalent(const LatticeParams& a, const LatticeParams& b, double rel_tol) {
  const Eigen::Matrix3d Ga = gram_matrix(a), Gb = gram_matrix(b);
  return (Ga - Gb).cwiseAbs().maxCoeff() <= rel_tol * Ga.cwiseAbs().maxCoeff();
}

long long form_R(long long m, long long n, long long p) {
  return m * m + n * n + p * p + m * p + n * p;
}

long long form_T(long long m, long long n, long long p) { return m * n * (m + p) * (n + p); }

FormValue form_values(long m, long n, long p) {
  const double s = double(m) * m + double(n) * n + double(p) * p;
  return {s / std::cbrt(2.0), double(form_R(m, n, p)), double(form_T(m, n, p))};
}

}  // namespace lattab
