#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lattab/errors.hpp"
#include "lattab/lattice.hpp"
#include "lattab/polynomial.hpp"
#include "lattab/potentials.hpp"

namespace lattab {

struct SumResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t points_used = 0;
  bool converged = false;
};

enum class SumStrategy {
  Direct,            // plain truncation, grown until the tail estimate is small
  RTruncated,        // R-shells up to t_max; only for FCC-shaped lattices
  GammaAccelerated,  // Gaussians directly or on the dual, powers by a Mellin split
};

enum class GaussianRoute { Auto, Direct, Dual };

struct SumConfig {
  double target_tol = 1e-12;
  SumStrategy strategy = SumStrategy::GammaAccelerated;
  double cutoff_growth = 2.0;
  int t_max = 40;
  std::size_t max_points = 20'000'000;
  GaussianRoute gaussian_route = GaussianRoute::Auto;
  // Mellin split point and Gaussian crossover, in units of pi V^{-2/3}.
  double split_scale = 1.0;

  // 1e-12 for Gaussians, 1e-9 when power laws are involved.
  static SumConfig defaults_for(const Potential& pot);
};

class SumError : public Error {
 public:
  SumError(ErrorKind kind, const std::string& what, SumResult partial)
      : Error(kind, what), partial_(partial) {}
  const SumResult& partial() const noexcept { return partial_; }

 private:
  SumResult partial_;
};

// weight(m,n,p) * kernel(Q(m,n,p))
struct SumPiece {
  Polynomial3 weight;
  KernelTerm kernel;
};
using SumSpec = std::vector<SumPiece>;

// weight * f^(order)(Q) as a spec.
SumSpec make_spec(const Polynomial3& weight, const Potential& pot, int order);

// Evaluates every spec over the nonzero points of the lattice in one pass.
// shape_derivative: the specs are parameter derivatives at fixed volume; the
// zero-frequency term of the dual representation is then dropped (it does
// not depend on the shape), which keeps tiny Gaussian derivatives accurate.
std::vector<SumResult> evaluate_sums(const LatticeParams& L, std::span<const SumSpec> specs,
                                     const SumConfig& cfg, bool shape_derivative = false);

SumResult lattice_sum(const LatticeParams& L, const Polynomial3& weight, const Potential& pot,
                      int order, const SumConfig& cfg);

// Gamma(sigma) * sum_{k != 0} P(k) Q(k)^{-sigma}, analytically continued in sigma.
// Finite also where Gamma has poles in the sum's normalisation.
SumResult mellin_power_sum(const LatticeParams& L, const Polynomial3& weight, double sigma,
                           const SumConfig& cfg);

// R-shells of the FCC form.
struct ShellPoint {
  std::array<int, 3> k;
  long long r;
  long long t;
};

// ceil(2 sqrt(t)): every triple with R <= t lies in this box.
int r_shell_box_bound(int t);
// Triples with 1 <= R <= t_max, sorted by (R, m, n, p). Cached for small t_max.
std::shared_ptr<const std::vector<ShellPoint>> r_shell_table(int t_max);

double r_shell_sum(const std::function<double(double)>& F, const Polynomial3& weight, int t_max);
std::vector<double> r_shell_sums(const std::function<double(double)>& F,
                                 std::span<const Polynomial3> weights, int t_max);

// A(t) = sum of T over R <= t.
long long cumulative_T(int t);

}  // namespace lattab
