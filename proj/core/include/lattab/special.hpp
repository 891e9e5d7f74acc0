#pragma once

#include "lattab/lattice.hpp"
#include "lattab/sums.hpp"

namespace lattab {

// theta_3(s) = sum_k exp(-pi k^2 s) and its s-derivatives.
struct Theta1DValue {
  double s;
  double th;
  double th1;
  double th2;
};
Theta1DValue theta3_all(double s);
double theta3(double s, int order = 0);
// s th'(s)/th(s) + (1/s) th'(1/s)/th(1/s); equals -1/2 identically.
double fs1_value(double s);

// theta_L(alpha) = sum over all of L of exp(-alpha |p|^2).
double theta_lattice(const LatticeParams& L, double alpha, const SumConfig& cfg = {});
// |theta_L(alpha) - V^{-1} (pi/alpha)^{3/2} theta_{L*}(pi^2/alpha)| / theta_L(alpha), both sides summed directly.
double poisson_theta_residual(const LatticeParams& L, double alpha, double tol = 1e-14);

enum class ZetaBackend { Direct, GammaAccelerated };

// zeta_L(2s) = sum |p|^{-2s}.
SumResult epstein_zeta(const LatticeParams& L, double two_s, ZetaBackend backend,
                       SumConfig cfg = SumConfig{1e-10});
// pi^{-s} Gamma(s) zeta_L(2s), finite for s <= 0 as well.
SumResult completed_epstein(const LatticeParams& L, double s, SumConfig cfg = SumConfig{1e-10});
// Relative residual of Lambda_L(s) = V^{-1} Lambda_{L*}(3/2 - s), with
// the two sides split at different points so the check is not an identity of the algorithm.
double functional_equation_residual(const LatticeParams& L, double s);

// The FCC lattice scaled so that its quadratic form is exactly R.
LatticeParams fcc_unit_form();

// zeta_{2^{-1/3} D3}(2s) = sum R^{-s}.
double zeta_fcc(double s, const SumConfig& cfg = SumConfig{1e-12});
// Y(s) = sum T R^{-s-2}.
double y_function(double s, const SumConfig& cfg = SumConfig{1e-12});
double g_function(double s, const SumConfig& cfg = SumConfig{1e-12});
double h_function(double s, const SumConfig& cfg = SumConfig{1e-12});

// Shell-series counterparts, truncated at R <= t_max, with a geometric tail estimate.
struct ShellSeries {
  double truncated;     // plain partial sum
  double extrapolated;  // with the tail model added
  double tail_estimate;
};
ShellSeries zeta_fcc_shells(double s, int t_max);
ShellSeries y_function_shells(double s, int t_max);
// Y truncated at t_max rearranged through A(t) - A(t-1).
double y_by_parts(double s, int t_max);

struct SpectralScalars {
  double beta;
  double A1;  // sum R^2 exp(-beta R)
  double A2;  // sum R exp(-beta R)
  double A3;  // sum T exp(-beta R)
};
// Accurate for every beta (A3 becomes exponentially small as beta -> 0).
SpectralScalars spectral_scalars(double beta, const SumConfig& cfg = SumConfig{1e-13});
// Plain R-shell sums up to t_max.
SpectralScalars spectral_scalars_shells(double beta, int t_max);

}  // namespace lattab
