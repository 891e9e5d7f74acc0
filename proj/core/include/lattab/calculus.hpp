#pragma once

#include <array>

#include <Eigen/Dense>

#include "lattab/lattice.hpp"
#include "lattab/potentials.hpp"
#include "lattab/sums.hpp"

namespace lattab {

enum Modulus { kU = 0, kV = 1, kX = 2, kY = 3, kZ = 4 };
inline constexpr std::array<const char*, 5> kModulusNames{"u", "v", "x", "y", "z"};

struct Gradient5 {
  std::array<double, 5> d{};
  double est_error = 0.0;
  double norm_inf() const;
};

struct Hessian5 {
  Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
  double est_error = 0.0;
};

// dQ/dtheta_i and d2Q/dtheta_i dtheta_j as polynomials in (m, n, p).
struct FormDerivatives {
  std::array<Polynomial3, 5> first;
  std::array<std::array<Polynomial3, 5>, 5> second;
};
FormDerivatives form_derivatives(const LatticeParams& L);

SumResult energy(const Potential& pot, const LatticeParams& L, const SumConfig& cfg);
Gradient5 gradient(const Potential& pot, const LatticeParams& L, const SumConfig& cfg);
Hessian5 hessian(const Potential& pot, const LatticeParams& L, const SumConfig& cfg);

// Hessian at the FCC point from sum R^2 f''(CR), sum R f'(CR), sum T f''(CR).
Hessian5 hessian_d3_closed(const Potential& pot, double volume, const SumConfig& cfg);
// Hessian at the simple cubic point from sum p^4 f'', sum p^2 n^2 f'', sum p^2 f' (argument C I).
Hessian5 hessian_z3_closed(const Potential& pot, double volume, const SumConfig& cfg);

// Cubic-lattice sums for one inverse-power exponent x (N = m^2 + n^2 + p^2):
//   S1 = sum (p^4 - p^2 n^2) N^{-x-2}, S2 = sum p^2 N^{-x-1}, S3 = sum p^2 n^2 N^{-x-2}
// and h1 = 3(x+1) S1 - 3 S2, h2 = (x+1) S1 - S2, h3 = 2(x+1) S3 - S2, h4 = -h1.
struct CubicHValues {
  double x;
  double S1, S2, S3;
  double h1, h2, h3, h4;
};
CubicHValues lj_h_values(double x, const SumConfig& cfg = SumConfig{1e-13});

// The (u,v) and (x,x) second derivatives of a Lennard-Jones energy at Z^3, from h-values.
struct Z3SecondDerivatives {
  double uu, vv, xx, uv;
};
Z3SecondDerivatives z3_lj_second_derivatives(const LennardJones& lj, double volume,
                                             const CubicHValues& h_x1, const CubicHValues& h_x2);

// Central finite differences of the energy in the moduli.
Gradient5 gradient_fd(const Potential& pot, const LatticeParams& L, const SumConfig& cfg, double h = 1e-5);
Hessian5 hessian_fd(const Potential& pot, const LatticeParams& L, const SumConfig& cfg, double h = 1e-4);
// Fourth-order accurate: Richardson combination of steps h and 2h.
Hessian5 hessian_fd_richardson(const Potential& pot, const LatticeParams& L, const SumConfig& cfg, double h = 1e-3);

}  // namespace lattab
