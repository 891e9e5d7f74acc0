#include "lattab/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lattab/compensated.hpp"
#include "lattab/errors.hpp"

namespace lattab {

namespace {

constexpr double kPi = std::numbers::pi;

Theta1DValue theta_direct(double s) {
  const int K = int(std::ceil(std::sqrt(40.0 / (kPi * s)))) + 2;
  CompensatedSum th, th1, th2;
  th.add(1.0);
  for (int k = K; k >= 1; --k) {
    const double a = kPi * double(k) * double(k);
    const double e = 2.0 * std::exp(-a * s);
    th.add(e);
    th1.add(-a * e);
    th2.add(a * a * e);
  }
  return {s, th.value(), th1.value(), th2.value()};
}

double pow_sum_kernel(double s, double q) { return std::pow(q, -s); }

}  // namespace

Theta1DValue theta3_all(double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "theta3 needs s > 0");
  if (s >= 1.0) return theta_direct(s);
  const Theta1DValue t = theta_direct(1.0 / s);
  const double r = 1.0 / std::sqrt(s);  // s^{-1/2}
  const double s1 = 1.0 / s;
  return {s,
          r * t.th,
          -0.5 * r * s1 * t.th - r * s1 * s1 * t.th1,
          0.75 * r * s1 * s1 * t.th + 3.0 * r * s1 * s1 * s1 * t.th1 + r * s1 * s1 * s1 * s1 * t.th2};
}

double theta3(double s, int order) {
  const auto t = theta3_all(s);
  switch (order) {
    case 0: return t.th;
    case 1: return t.th1;
    case 2: return t.th2;
  }
  throw Error(ErrorKind::InvalidParameter, "theta3 order must be 0, 1 or 2");
}

double fs1_value(double s) {
  const auto a = theta3_all(s);
  const auto b = theta3_all(1.0 / s);
  return s * a.th1 / a.th + (1.0 / s) * b.th1 / b.th;
}

double theta_lattice(const LatticeParams& L, double alpha, const SumConfig& cfg) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "theta needs alpha > 0");
  SumConfig c = cfg;
  c.strategy = SumStrategy::GammaAccelerated;
  const SumSpec spec = make_spec(Polynomial3::constant(1.0), Potential::gaussian(alpha), 0);
  return 1.0 + evaluate_sums(L, std::span<const SumSpec>(&spec, 1), c)[0].value;
}

double poisson_theta_residual(const LatticeParams& L, double alpha, double tol) {
  SumConfig c;
  c.target_tol = tol;
  c.gaussian_route = GaussianRoute::Direct;
  const double lhs = theta_lattice(L, alpha, c);
  const LatticeParams D = dual(L);
  const double rhs = std::pow(kPi / alpha, 1.5) / L.volume * theta_lattice(D, kPi * kPi / alpha, c);
  return std::fabs(lhs - rhs) / std::fabs(lhs);
}

SumResult epstein_zeta(const LatticeParams& L, double two_s, ZetaBackend backend, SumConfig cfg) {
  const double s = 0.5 * two_s;
  if (backend == ZetaBackend::Direct) {
    if (!(s > 1.5)) throw Error(ErrorKind::NotConvergent, "direct Epstein zeta needs s > 3/2");
    cfg.strategy = SumStrategy::Direct;
  } else {
    cfg.strategy = SumStrategy::GammaAccelerated;
    if (std::fabs(s - 1.5) < 1e-12) throw Error(ErrorKind::PoleAt3Halves, "Epstein zeta has a pole at s = 3/2");
  }
  const SumSpec spec{{Polynomial3::constant(1.0), {KernelTerm::Kind::Power, 1.0, s}}};
  return evaluate_sums(L, std::span<const SumSpec>(&spec, 1), cfg)[0];
}

SumResult completed_epstein(const LatticeParams& L, double s, SumConfig cfg) {
  cfg.strategy = SumStrategy::GammaAccelerated;
  if (std::fabs(s - 1.5) < 1e-12 || std::fabs(s) < 1e-12)
    throw Error(ErrorKind::PoleAt3Halves, "completed Epstein zeta has poles at s = 0 and s = 3/2");
  SumResult r = mellin_power_sum(L, Polynomial3::constant(1.0), s, cfg);
  const double f = std::pow(kPi, -s);
  r.value *= f;
  r.est_error *= f;
  return r;
}

double functional_equation_residual(const LatticeParams& L, double s) {
  SumConfig left{1e-13};
  SumConfig right{1e-13};
  right.split_scale = 0.6;
  const double lhs = completed_epstein(L, s, left).value;
  const double rhs = completed_epstein(dual(L), 1.5 - s, right).value / L.volume;
  return std::fabs(lhs - rhs) / std::fabs(lhs);
}

LatticeParams fcc_unit_form() { return named::fcc(1.0 / std::sqrt(2.0)); }

double zeta_fcc(double s, const SumConfig& cfg) {
  return epstein_zeta(fcc_unit_form(), 2.0 * s, ZetaBackend::GammaAccelerated, cfg).value;
}

double y_function(double s, const SumConfig& cfg) {
  SumConfig c = cfg;
  c.strategy = SumStrategy::GammaAccelerated;
  const SumSpec spec{{forms::T(), {KernelTerm::Kind::Power, 1.0, s + 2.0}}};
  return evaluate_sums(fcc_unit_form(), std::span<const SumSpec>(&spec, 1), c)[0].value;
}

double g_function(double s, const SumConfig& cfg) {
  return s * (s - 3.0) * zeta_fcc(s, cfg) + 12.0 * s * (s + 1.0) * y_function(s, cfg);
}

double h_function(double s, const SumConfig& cfg) {
  return s * (s - 1.0) * zeta_fcc(s, cfg) - 4.0 * s * (s + 1.0) * y_function(s, cfg);
}

namespace {

// Partial sums at t_max and t_max 2^{-2/3}; tail ~ t^{(3 - 2 eta)/2}.
ShellSeries shell_series(const Polynomial3& weight, double sigma, double eta, int t_max) {
  const double t_in = t_max / std::cbrt(4.0);
  CompensatedSum inner, outer;
  const auto table = r_shell_table(t_max);
  PowerTable pw(weight.degree());
  for (const auto& pt : *table) {
    pw.set(pt.k[0], pt.k[1], pt.k[2]);
    const double v = pw.eval(weight) * pow_sum_kernel(sigma, double(pt.r));
    (double(pt.r) <= t_in ? inner : outer).add(v);
  }
  CompensatedSum total = inner;
  total.merge(outer);
  ShellSeries out{total.value(), total.value(), 0.0};
  if (2.0 * eta > 3.0) {
    const double r = std::pow(2.0, (3.0 - 2.0 * eta) / 3.0);
    out.tail_estimate = outer.value() * r / (1.0 - r);
    out.extrapolated = out.truncated + out.tail_estimate;
  } else {
    out.tail_estimate = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

ShellSeries zeta_fcc_shells(double s, int t_max) {
  return shell_series(Polynomial3::constant(1.0), s, s, t_max);
}

ShellSeries y_function_shells(double s, int t_max) { return shell_series(forms::T(), s + 2.0, s, t_max); }

double y_by_parts(double s, int t_max) {
  CompensatedSum acc;
  long long prev = cumulative_T(1);
  for (int t = 2; t <= t_max; ++t) {
    const long long a = cumulative_T(t);
    acc.add(double(a - prev) * std::pow(double(t), -s - 2.0));
    prev = a;
  }
  return acc.value();
}

SpectralScalars spectral_scalars(double beta, const SumConfig& cfg) {
  if (!(beta > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "beta must be positive");
  SumConfig c = cfg;
  c.strategy = SumStrategy::GammaAccelerated;
  const KernelTerm k{KernelTerm::Kind::Exponential, 1.0, beta};
  const Polynomial3 R = forms::R();
  const std::vector<SumSpec> specs{{{R * R, k}}, {{R, k}}, {{forms::T(), k}}};
  const auto r = evaluate_sums(fcc_unit_form(), specs, c);
  return {beta, r[0].value, r[1].value, r[2].value};
}

SpectralScalars spectral_scalars_shells(double beta, int t_max) {
  if (!(beta > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "beta must be positive");
  const Polynomial3 R = forms::R();
  const std::vector<Polynomial3> w{R * R, R, forms::T()};
  const auto v = r_shell_sums([beta](double r) { return std::exp(-beta * r); }, w, t_max);
  return {beta, v[0], v[1], v[2]};
}

}  // namespace lattab
