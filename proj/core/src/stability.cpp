#include "lattab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Eigenvalues>

#include "lattab/errors.hpp"
#include "lattab/special.hpp"

namespace lattab {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::LocalMin: return "LocalMin";
    case Classification::LocalMax: return "LocalMax";
    case Classification::Saddle: return "Saddle";
    case Classification::Degenerate: return "Degenerate";
  }
  return "?";
}

Classification classify_eigenvalues(const std::array<double, 5>& ev, double eig_tol) {
  int pos = 0, neg = 0;
  for (double l : ev) {
    if (std::fabs(l) <= eig_tol) return Classification::Degenerate;
    (l > 0 ? pos : neg)++;
  }
  if (neg == 0) return Classification::LocalMin;
  if (pos == 0) return Classification::LocalMax;
  return Classification::Saddle;
}

StabilityReport classify(const Potential& pot, const LatticeParams& L, const SumConfig& cfg,
                         const StabilityTolerances& tol) {
  StabilityReport rep;
  rep.lattice = L;
  rep.potential = pot;
  rep.config = cfg;
  rep.energy = energy(pot, L, cfg).value;
  rep.gradient_norm = gradient(pot, L, cfg).norm_inf();
  rep.grad_tol = tol.grad_rel * (std::fabs(rep.energy) + 1.0);
  if (rep.gradient_norm > rep.grad_tol)
    throw Error(ErrorKind::NotCritical, "lattice is not a critical point of the energy");

  rep.hessian = hessian(pot, L, cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> es(rep.hessian.m, Eigen::EigenvaluesOnly);
  double big = 0.0;
  for (int i = 0; i < 5; ++i) {
    rep.eigenvalues[i] = es.eigenvalues()[i];
    big = std::max(big, std::fabs(rep.eigenvalues[i]));
  }
  rep.eig_tol = tol.eig_rel * big;
  rep.classification = classify_eigenvalues(rep.eigenvalues, rep.eig_tol);
  return rep;
}

namespace {

// First sign change of f on the scan grid, refined by bisection.
ThresholdResult find_threshold(const std::function<double(double)>& f, const ScanWindow& w, std::string name,
                               std::string criterion) {
  ThresholdResult r;
  r.name = std::move(name);
  r.criterion = std::move(criterion);
  const int n = int(std::llround((w.hi - w.lo) / w.step));
  double prev_x = w.lo, prev_f = f(w.lo);
  bool found = false;
  for (int i = 1; i <= n; ++i) {
    const double x = w.lo + i * w.step;
    const double fx = f(x);
    if ((prev_f < 0) != (fx < 0)) {
      ++r.sign_changes;
      if (!found) {
        found = true;
        r.lo = prev_x;
        r.hi = x;
      }
    }
    prev_x = x;
    prev_f = fx;
  }
  if (!found) throw Error(ErrorKind::NoBracket, "no sign change of " + r.criterion + " in the scan window");

  double flo = f(r.lo);
  while (r.hi - r.lo > w.xtol) {
    const double mid = 0.5 * (r.lo + r.hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      r.lo = mid;
      flo = fm;
    } else {
      r.hi = mid;
    }
  }
  r.value = 0.5 * (r.lo + r.hi);
  r.residual = f(r.value);
  return r;
}

std::pair<double, double> block_eigenvalues(const Z3SecondDerivatives& d) {
  const double m = 0.5 * (d.uu + d.vv);
  const double r = std::hypot(0.5 * (d.uu - d.vv), d.uv);
  return {m - r, m + r};
}

}  // namespace

std::vector<ThresholdResult> lj_z3_thresholds(const LennardJones& lj, const ScanWindow& w, const SumConfig& cfg) {
  (void)Potential(lj);  // validates
  const CubicHValues h1 = lj_h_values(lj.x1, cfg);
  const CubicHValues h2 = lj_h_values(lj.x2, cfg);
  auto d = [&](double V) { return z3_lj_second_derivatives(lj, V, h1, h2); };

  std::vector<ThresholdResult> out;
  out.push_back(find_threshold([&](double V) { return d(V).xx; }, w, "V1", "d2E/dx2"));
  out.push_back(find_threshold([&](double V) { return block_eigenvalues(d(V)).first; }, w, "V2",
                               "smaller eigenvalue of the (u,v) block"));
  out.push_back(find_threshold([&](double V) { return d(V).uu; }, w, "V3", "d2E/du2"));
  out.push_back(find_threshold([&](double V) { return block_eigenvalues(d(V)).second; }, w, "V4",
                               "larger eigenvalue of the (u,v) block"));
  return out;
}

FccThresholds lj_fcc_thresholds(const LennardJones& lj, const SumConfig& cfg) {
  (void)Potential(lj);
  FccThresholds t;
  t.g1 = g_function(lj.x1, cfg);
  t.g2 = g_function(lj.x2, cfg);
  t.h1 = h_function(lj.x1, cfg);
  t.h2 = h_function(lj.x2, cfg);
  const double rg = lj.a2 * t.g2 / (lj.a1 * t.g1);
  const double rh = lj.a2 * t.h2 / (lj.a1 * t.h1);
  if (!(rg > 0.0) || !(rh > 0.0))
    throw Error(ErrorKind::NoBracket, "G or H ratio is not positive; no sign change in volume");
  const double e = 3.0 / (2.0 * (lj.x2 - lj.x1));
  t.v_g = std::pow(rg, e) / std::sqrt(2.0);
  t.v_h = std::pow(rh, e) / std::sqrt(2.0);
  t.v_lo = std::min(t.v_g, t.v_h);
  t.v_hi = std::max(t.v_g, t.v_h);
  return t;
}

SignQuantities sign_quantities_theta(double beta, const SumConfig& cfg) {
  if (!(beta > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "beta must be positive");
  SignQuantities q;
  q.beta = beta;
  if (beta >= 1.0) {
    const auto s = spectral_scalars(beta, cfg);
    q.q_uu = beta * s.A1 + 12.0 * beta * s.A3 - 4.0 * s.A2;
    q.q_xx = beta * (s.A1 + 4.0 * s.A3) - 3.0 * s.A2;
    q.q_zz = beta * (s.A1 - 4.0 * s.A3) - 2.0 * s.A2;
    q.det_uv = beta * beta / 6.0 * q.q_uu * q.q_zz;
    q.det_xy = beta * beta / 9.0 * q.q_uu * q.q_zz;
    return q;
  }
  // Below beta = 1 the scalars cancel catastrophically; the shape Hessian keeps
  // full relative accuracy through the dual sum.
  const LatticeParams L = named::fcc(1.0);
  const Hessian5 H = hessian(Potential::gaussian(beta / L.c()), L, cfg);
  q.from_hessian = true;
  q.q_uu = 2.0 * H.m(kU, kU) / beta;
  q.q_xx = 3.0 * H.m(kX, kX) / beta;
  q.q_zz = 1.5 * H.m(kZ, kZ) / beta;
  q.det_uv = H.m(kU, kU) * H.m(kV, kV) - H.m(kU, kV) * H.m(kU, kV);
  q.det_xy = H.m(kX, kX) * H.m(kY, kY) - H.m(kX, kY) * H.m(kX, kY);
  return q;
}

ThetaScan theta_alpha_scan(double volume, std::span<const double> alphas, const SumConfig& cfg, double alpha_tol) {
  ThetaScan scan;
  scan.volume = volume;
  const LatticeParams d3 = named::fcc(volume), d3s = named::bcc(volume);
  auto cls = [&](const LatticeParams& L, double a) {
    return classify(Potential::gaussian(a), L, cfg).classification;
  };

  for (double a : alphas) scan.rows.push_back({a, cls(d3, a), cls(d3s, a), sign_quantities_theta(d3.c() * a, cfg)});

  auto refine = [&](const LatticeParams& L, double lo, double hi, Classification c_lo, Classification c_hi) {
    ThetaTransition t{0.0, lo, hi, c_lo, c_hi};
    while (t.hi - t.lo > alpha_tol * std::max(1.0, t.lo)) {
      const double mid = 0.5 * (t.lo + t.hi);
      if (cls(L, mid) == c_lo)
        t.lo = mid;
      else
        t.hi = mid;
    }
    t.alpha = 0.5 * (t.lo + t.hi);
    return t;
  };
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    const auto& p = scan.rows[i - 1];
    const auto& c = scan.rows[i];
    if (p.d3 != c.d3) scan.d3_transitions.push_back(refine(d3, p.alpha, c.alpha, p.d3, c.d3));
    if (p.d3_dual != c.d3_dual)
      scan.d3_dual_transitions.push_back(refine(d3s, p.alpha, c.alpha, p.d3_dual, c.d3_dual));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  scan.alpha0 = scan.alpha1 = nan;
  for (const auto& t : scan.d3_transitions)
    if (t.from == Classification::Saddle) {
      scan.alpha0 = t.alpha;
      break;
    }
  if (!scan.rows.empty() && scan.rows.back().d3 == Classification::LocalMin)
    for (auto it = scan.d3_transitions.rbegin(); it != scan.d3_transitions.rend(); ++it)
      if (it->to == Classification::LocalMin) {
        scan.alpha1 = it->alpha;
        break;
      }
  const std::size_t nt = scan.d3_transitions.size();
  scan.ambiguous = std::isnan(scan.alpha0) || std::isnan(scan.alpha1) || nt > 2;
  return scan;
}

}  // namespace lattab
