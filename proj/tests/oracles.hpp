#pragma once

// Independent reference computations for the tests. Nothing here calls the
// summation engine: plain loops, long double where it matters.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lattab/lattice.hpp"

namespace oracle {

inline constexpr long double kPiL = std::numbers::pi_v<long double>;

// theta_3(s) = sum_k exp(-pi k^2 s) and its s-derivatives by brute force.
struct Theta {
  long double th, th1, th2;
};
inline Theta theta3(long double s) {
  const long K = long(std::ceil(std::sqrt(60.0L / (kPiL * s)))) + 5;
  Theta t{0, 0, 0};
  for (long k = K; k >= -K; --k) {
    const long double a = kPiL * k * k;
    const long double e = std::exp(-a * s);
    t.th += e;
    t.th1 -= a * e;
    t.th2 += a * a * e;
  }
  return t;
}

// Box sum of g over k != 0 with |k_i| <= N.
inline long double box_sum(int N, const std::function<long double(int, int, int)>& g) {
  long double s = 0;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n)
      for (int p = -N; p <= N; ++p)
        if (m || n || p) s += g(m, n, p);
  return s;
}

// sum |k|^{-2s} over the cubic lattice, ball of radius N plus the continuum tail 4 pi N^{3-2s}/(2s-3).
inline long double zeta_z3(double two_s, int N) {
  const long double N2 = (long double)N * N;
  long double s = 0;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n)
      for (int p = -N; p <= N; ++p) {
        const long double q = (long double)m * m + (long double)n * n + (long double)p * p;
        if (q == 0 || q > N2) continue;
        s += std::pow(q, -0.5L * two_s);
      }
  return s + 4 * kPiL * std::pow((long double)N, 3 - two_s) / (two_s - 3);
}

inline long long R(long long m, long long n, long long p) { return m * m + n * n + p * p + m * p + n * p; }
inline long long T(long long m, long long n, long long p) { return m * n * (m + p) * (n + p); }

// Box half-width certified for R <= t: the inverse Gram matrix of R has
// diagonal (3/2, 3/2, 2), so max |k_i|^2 over R <= t is at most 2t.
inline int r_box(int t) { return int(std::ceil(std::sqrt(2.0 * t))) + 1; }

// Number of triples with R = t, for t <= t_max.
inline std::vector<long long> r_shell_counts(int t_max) {
  const int B = r_box(t_max);
  std::vector<long long> c(std::size_t(t_max) + 1, 0);
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n)
      for (int p = -B; p <= B; ++p) {
        const long long r = R(m, n, p);
        if (r >= 1 && r <= t_max) ++c[std::size_t(r)];
      }
  return c;
}

// A(t) = sum of T over 1 <= R <= t, exhaustive over a box of half-width B.
inline long long cumulative_T(int t, int B) {
  long long a = 0;
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n)
      for (int p = -B; p <= B; ++p)
        if (R(m, n, p) <= t) a += T(m, n, p);
  return a;
}

// Energy of a Gaussian from explicit basis vectors.
inline long double gaussian_energy(const lattab::LatticeParams& L, long double alpha, int N) {
  const Eigen::Matrix3d B = lattab::basis(L).matrix();
  return box_sum(N, [&](int m, int n, int p) {
    const Eigen::Vector3d v = B * Eigen::Vector3d(m, n, p);
    return std::exp(-alpha * (long double)v.squaredNorm());
  });
}

// Random lattices comfortably away from degeneracy.
inline std::vector<lattab::LatticeParams> random_lattices(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uv(0.8, 1.25), xyz(-0.5, 0.5), vol(0.6, 1.6);
  std::vector<lattab::LatticeParams> out;
  for (int i = 0; i < count; ++i) out.push_back({uv(rng), uv(rng), xyz(rng), xyz(rng), xyz(rng), vol(rng)});
  return out;
}

}  // namespace oracle
