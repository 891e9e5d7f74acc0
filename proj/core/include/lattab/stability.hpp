#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "lattab/calculus.hpp"
#include "lattab/lattice.hpp"
#include "lattab/potentials.hpp"
#include "lattab/sums.hpp"

namespace lattab {

enum class Classification { LocalMin, LocalMax, Saddle, Degenerate };
const char* to_string(Classification c);

struct StabilityTolerances {
  double grad_rel = 1e-7;  // gradient tolerance is grad_rel * (|E| + 1)
  double eig_rel = 1e-8;   // eigenvalue tolerance is eig_rel * max |lambda|
};

struct StabilityReport {
  LatticeParams lattice;
  Potential potential = Potential::gaussian(1.0);
  Classification classification = Classification::Degenerate;
  std::array<double, 5> eigenvalues{};  // ascending
  double energy = 0.0;
  double gradient_norm = 0.0;
  double grad_tol = 0.0;
  double eig_tol = 0.0;
  SumConfig config;
  Hessian5 hessian;
};

Classification classify_eigenvalues(const std::array<double, 5>& eigenvalues, double eig_tol);

// Throws Error(NotCritical) if the gradient exceeds its tolerance.
StabilityReport classify(const Potential& pot, const LatticeParams& L, const SumConfig& cfg,
                         const StabilityTolerances& tol = {});

struct ThresholdResult {
  std::string name;
  double value = 0.0;
  double lo = 0.0, hi = 0.0;  // final bracket
  double residual = 0.0;      // criterion evaluated at value
  std::string criterion;
  int sign_changes = 0;       // over the scan window
};

struct ScanWindow {
  double lo = 0.5, hi = 3.0, step = 0.01, xtol = 1e-6;
};

// V1..V4 for a Lennard-Jones energy at Z^3:
//   V1: zero of d2E/dx2, V3: zero of d2E/du2,
//   V2, V4: zeros of the smaller and larger eigenvalue of the (u,v) block.
std::vector<ThresholdResult> lj_z3_thresholds(const LennardJones& lj, const ScanWindow& w = {},
                                              const SumConfig& cfg = SumConfig{1e-13});

struct FccThresholds {
  double v_g = 0.0, v_h = 0.0;  // volumes where the G and H combinations change sign
  double v_lo = 0.0, v_hi = 0.0;
  double g1 = 0.0, g2 = 0.0, h1 = 0.0, h2 = 0.0;  // G(x1), G(x2), H(x1), H(x2)
};
FccThresholds lj_fcc_thresholds(const LennardJones& lj, const SumConfig& cfg = SumConfig{1e-12});

struct SignQuantities {
  double beta = 0.0;
  double q_uu = 0.0, q_xx = 0.0, q_zz = 0.0;
  double det_uv = 0.0, det_xy = 0.0;
  bool from_hessian = false;  // small beta: taken from the FCC Hessian rather than the scalars
};
SignQuantities sign_quantities_theta(double beta, const SumConfig& cfg = SumConfig{1e-13});

struct ThetaScanRow {
  double alpha = 0.0;
  Classification d3 = Classification::Degenerate;
  Classification d3_dual = Classification::Degenerate;
  SignQuantities signs;  // at beta = C alpha
};

struct ThetaTransition {
  double alpha = 0.0, lo = 0.0, hi = 0.0;
  Classification from, to;
};

struct ThetaScan {
  double volume = 1.0;
  std::vector<ThetaScanRow> rows;
  std::vector<ThetaTransition> d3_transitions, d3_dual_transitions;
  double alpha0 = 0.0;  // first alpha where FCC stops being a saddle
  double alpha1 = 0.0;  // alpha from which FCC stays a local minimum
  bool ambiguous = false;
};

ThetaScan theta_alpha_scan(double volume, std::span<const double> alphas, const SumConfig& cfg = SumConfig{1e-12},
                           double alpha_tol = 1e-6);

}  // namespace lattab
