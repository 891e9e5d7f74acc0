#pragma once

#include <array>

#include <Eigen/Dense>

namespace lattab {

// Five moduli (u, v, x, y, z) of a Bravais lattice at fixed cell volume.
struct LatticeParams {
  double u = 1.0;
  double v = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double volume = 1.0;

  // C = 2^{1/3} V^{2/3}
  double c() const;
  // Throws InvalidParameter unless u, v, V are positive and finite.
  void validate() const;

  std::array<double, 5> moduli() const { return {u, v, x, y, z}; }
  static LatticeParams from_moduli(const std::array<double, 5>& q, double volume);
};

namespace named {
LatticeParams simple_cubic(double volume = 1.0);  // Z^3
LatticeParams fcc(double volume = 1.0);           // D3
LatticeParams bcc(double volume = 1.0);           // D3*
}  // namespace named

struct Basis3 {
  Eigen::Vector3d v1, v2, v3;

  Eigen::Matrix3d matrix() const;  // columns v1, v2, v3
  Eigen::Matrix3d gram() const;
  double determinant() const { return matrix().determinant(); }
  static Basis3 from_matrix(const Eigen::Matrix3d& columns);
};

double quadratic_form(const LatticeParams& L, double m, double n, double p);
// Gram matrix of the integer form: Q(k) = k^T G k.
Eigen::Matrix3d gram_matrix(const LatticeParams& L);

Basis3 basis(const LatticeParams& L);
LatticeParams params_from_basis(const Basis3& b);
LatticeParams params_from_gram(const Eigen::Matrix3d& G);
Basis3 dual_basis(const Basis3& b);
// Dual lattice, which has volume 1/V.
LatticeParams dual(const LatticeParams& L);

// Lattices are identified up to rotation: compares Gram matrices.
bool gram_equivalent(const LatticeParams& a, const LatticeParams& b, double rel_tol);

struct FormValue {
  double I;
  double R;
  double T;
};
FormValue form_values(long m, long n, long p);

// Exact integer versions of R and T.
long long form_R(long long m, long long n, long long p);
long long form_T(long long m, long long n, long long p);

}  // namespace lattab
