#include "lattab/sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include "lattab/compensated.hpp"
#include "lattab/enumerate.hpp"
#include "lattab/parallel.hpp"

namespace lattab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 8192;
constexpr int kMaxDeg = 16;

void quiet_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

// Gamma(a, x) for x > 0 and any real a.
double upper_gamma(double a, double x) {
  if (x > 700.0) return 0.0;
  gsl_sf_result r;
  if (gsl_sf_gamma_inc_e(a, x, &r) != GSL_SUCCESS) {
    if (x > 50.0) return 0.0;  // underflow
    throw Error(ErrorKind::NotConvergent, "incomplete gamma evaluation failed");
  }
  return r.val;
}

double gamma_inv(double s) { return gsl_sf_gammainv(s); }

// Physicists' Hermite polynomials, h[n][l] = coefficient of y^l in H_n(y).
struct HermiteTable {
  double h[kMaxDeg + 1][kMaxDeg + 1] = {};
  HermiteTable() {
    h[0][0] = 1.0;
    h[1][1] = 2.0;
    for (int n = 1; n < kMaxDeg; ++n)
      for (int l = 0; l <= n + 1; ++l)
        h[n + 1][l] = (l > 0 ? 2.0 * h[n][l - 1] : 0.0) - 2.0 * n * h[n - 1][l];
  }
};
const HermiteTable& hermite() {
  static const HermiteTable t;
  return t;
}

// Bound on the summed magnitude outside radius^2 lam, for terms
// <= M rho^kappa exp(-gamma rho) on a lattice of covolume vol.
double tail_bound(double M, double kappa, double gamma, double vol, double lam) {
  if (M == 0.0) return 0.0;
  const double a = kappa + 1.5;
  return 4.0 * kPi / vol * M * std::pow(gamma, -a) * upper_gamma(a, gamma * lam);
}

double choose_cutoff(double M, double kappa, double gamma, double vol, double lam_min,
                     double tol, double* err) {
  double lam = std::max(lam_min, 1.0 / gamma);
  for (int i = 0; i < 2000; ++i) {
    const double e = tail_bound(M, kappa, gamma, vol, lam);
    if (e <= tol) {
      *err = e;
      return lam;
    }
    lam *= 1.05;
  }
  throw Error(ErrorKind::NotConvergent, "could not bound a series tail");
}

enum class Route { DirectExp, DualExp, Mellin };

// One term of the Fourier transform of a Cartesian monomial times a Gaussian:
// coef * (pi q_0)^l0 (pi q_1)^l1 (pi q_2)^l2 * K[D].
struct DualTerm {
  double coef;
  std::array<int, 3> l;
  int D;
  double scale;  // sum of |contributions| before cancellation
};

struct Piece {
  std::size_t spec = 0;
  Polynomial3 weight;
  KernelTerm kernel;
  Route route = Route::DirectExp;
  std::vector<DualTerm> dual_terms;
  int max_D = 0;
  double real_cutoff = 0.0;  // in Q
  double dual_cutoff = 0.0;  // in |q|^2
  double real_err = 0.0;
  double dual_err = 0.0;
  double norm = 1.0;  // factor applied to the accumulated bracket
  bool skip = false;
  std::size_t eval = 0;  // index of the shared kernel evaluator
};

// Kernel values shared by pieces with the same route and rate.
struct Evaluator {
  Route route;
  double rate;
  int max_D = 0;
  double real_cutoff = 0.0;
  double dual_cutoff = 0.0;
};

std::vector<DualTerm> dual_terms_for(const Polynomial3& cart) {
  const auto& H = hermite();
  std::map<std::pair<std::array<int, 3>, int>, double> acc, scale;
  // Rounding noise of the basis change shows up as tiny monomials; drop them per degree.
  std::map<int, double> deg_max;
  for (const auto& t : cart.terms()) deg_max[t.degree()] = std::max(deg_max[t.degree()], std::fabs(t.coef));
  for (const auto& t : cart.terms()) {
    const int deg = t.degree();
    if (deg % 2 != 0) continue;  // cancels between q and -q
    if (std::fabs(t.coef) <= 1e-13 * deg_max[deg]) continue;
    const double base = t.coef * ((deg / 2) % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, -deg);
    const auto& a = t.exp;
    for (int l0 = 0; l0 <= a[0]; ++l0)
      for (int l1 = 0; l1 <= a[1]; ++l1)
        for (int l2 = 0; l2 <= a[2]; ++l2) {
          const double c = H.h[a[0]][l0] * H.h[a[1]][l1] * H.h[a[2]][l2];
          if (c == 0.0) continue;
          acc[{{l0, l1, l2}, deg + l0 + l1 + l2}] += base * c;
          scale[{{l0, l1, l2}, deg + l0 + l1 + l2}] += std::fabs(base * c);
        }
  }
  std::vector<DualTerm> out;
  // Coefficients that cancel to rounding level are exact zeros (e.g. the
  // spherical mean of T); keeping the noise would swamp tiny dual sums.
  for (const auto& [key, c] : acc) {
    const bool keep = std::fabs(c) > 1e-13 * scale[key];
    // l = 0 terms stay (possibly as zeros) so the zero-frequency check knows their scale.
    if (keep || key.first == std::array<int, 3>{0, 0, 0}) out.push_back({keep ? c : 0.0, key.first, key.second, scale[key]});
  }
  return out;
}

// sum over dual terms of |coef| pi^{|l|} t^{-D/2}: magnitude constant for the dual tail bound.
double dual_magnitude(const std::vector<DualTerm>& terms, double t) {
  double s = 0.0;
  for (const auto& d : terms)
    s += std::fabs(d.coef) * std::pow(kPi, d.l[0] + d.l[1] + d.l[2]) * std::pow(t, -0.5 * d.D);
  return s;
}

std::string fmt_g(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

double shortest_norm2(const Eigen::Matrix3d& G) {
  const auto pts = enumerate_ellipsoid(G, G.diagonal().minCoeff());
  double q = G.diagonal().minCoeff();
  for (const auto& p : pts) q = std::min(q, p.q);
  return q;
}

bool fcc_shaped(const LatticeParams& L) {
  return std::fabs(L.u - 1) < 1e-12 && std::fabs(L.v - 1) < 1e-12 && std::fabs(L.x) < 1e-12 &&
         std::fabs(L.y - 0.5) < 1e-12 && std::fabs(L.z - 0.5) < 1e-12;
}

double spec_eta(const SumSpec& spec) {
  double eta = std::numeric_limits<double>::infinity();
  for (const auto& p : spec)
    if (p.kernel.kind == KernelTerm::Kind::Power)
      eta = std::min(eta, p.kernel.rate - 0.5 * p.weight.degree());
  return eta;
}

int max_degree(std::span<const SumSpec> specs) {
  int d = 0;
  for (const auto& s : specs)
    for (const auto& p : s) d = std::max(d, p.weight.degree());
  if (d > kMaxDeg) throw Error(ErrorKind::InvalidParameter, "weight degree too large");
  return d;
}

// Chunked sum over points; per-chunk accumulators reduced in chunk order.
template <class PointT, class Fn>
std::vector<CompensatedSum> chunked_sum(const std::vector<PointT>& pts, std::size_t n_acc, Fn&& fn) {
  const std::size_t n_chunks = (pts.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<CompensatedSum>> partial(n_chunks, std::vector<CompensatedSum>(n_acc));
  parallel_chunks(n_chunks, [&](std::size_t c) {
    const std::size_t lo = c * kChunk, hi = std::min(pts.size(), lo + kChunk);
    auto& acc = partial[c];
    for (std::size_t i = lo; i < hi; ++i) fn(pts[i], acc);
  });
  std::vector<CompensatedSum> total(n_acc);
  for (const auto& part : partial)
    for (std::size_t a = 0; a < n_acc; ++a) total[a].merge(part[a]);
  return total;
}

void check_budget(double expected, std::size_t max_points, const char* what) {
  if (expected > double(max_points))
    throw SumError(ErrorKind::Budget, std::string("point budget exceeded in ") + what,
                   SumResult{std::numeric_limits<double>::quiet_NaN(), 0.0, 0, false});
}

double ball_count(double lam, double vol) { return 4.0 * kPi / 3.0 * std::pow(lam, 1.5) / vol + 100.0; }

// ---------------------------------------------------------------------------
// Accelerated strategy.

std::vector<SumResult> accelerated(const LatticeParams& L, std::span<const SumSpec> specs,
                                   const SumConfig& cfg, bool shape_derivative,
                                   bool raw_bracket) {
  quiet_gsl();
  const double V = L.volume;
  const Eigen::Matrix3d B = basis(L).matrix();
  const Eigen::Matrix3d Binv = B.inverse();
  const Eigen::Matrix3d G = B.transpose() * B;
  const Eigen::Matrix3d Gd = Binv * Binv.transpose();  // Gram of the dual in integer coordinates
  const double lam_real = min_eigenvalue(G);
  // Exponential parts also keep a relative floor: everything within 45/rate of
  // the shortest vector, so exponentially small sums keep full relative accuracy.
  const double q_min = shortest_norm2(G);
  const double rho_min = shortest_norm2(Gd);
  const double crossover = cfg.split_scale * kPi * std::pow(V, -2.0 / 3.0);
  const double tau = crossover;

  std::vector<Piece> pieces;
  std::vector<std::size_t> per_spec(specs.size(), 0);
  for (std::size_t s = 0; s < specs.size(); ++s)
    for (const auto& sp : specs[s]) {
      if (sp.weight.is_zero() || sp.kernel.coef == 0.0) continue;
      Piece p;
      p.spec = s;
      p.weight = sp.weight;
      p.kernel = sp.kernel;
      if (sp.kernel.kind == KernelTerm::Kind::Power) {
        p.route = Route::Mellin;
      } else {
        const bool dual = cfg.gaussian_route == GaussianRoute::Dual ||
                          (cfg.gaussian_route == GaussianRoute::Auto && sp.kernel.rate < crossover);
        p.route = dual ? Route::DualExp : Route::DirectExp;
      }
      pieces.push_back(std::move(p));
      ++per_spec[s];
    }

  // Cutoffs from a-priori tail bounds.
  for (auto& p : pieces) {
    const double tol_piece = cfg.target_tol / (2.0 * double(std::max<std::size_t>(per_spec[p.spec], 1)));
    const int d = p.weight.degree();
    const double Wk = p.weight.magnitude(1.0 / std::sqrt(lam_real));
    if (p.route != Route::DirectExp) {
      p.dual_terms = dual_terms_for(p.weight.substitute(Binv));
      for (const auto& t : p.dual_terms) p.max_D = std::max(p.max_D, t.D);
    }
    if (p.route == Route::DirectExp) {
      const double M = std::fabs(p.kernel.coef) * Wk;
      p.real_cutoff = choose_cutoff(M, 0.5 * d, p.kernel.rate, V, std::max(1.0, q_min + 45.0 / p.kernel.rate),
                                    tol_piece, &p.real_err);
    } else if (p.route == Route::DualExp) {
      const double a = p.kernel.rate;
      const double M = std::fabs(p.kernel.coef) / V * std::pow(kPi / a, 1.5) * dual_magnitude(p.dual_terms, a);
      p.dual_cutoff = choose_cutoff(M, 0.5 * d, kPi * kPi / a, 1.0 / V,
                                    std::max(1.0, rho_min + 45.0 * a / (kPi * kPi)), tol_piece, &p.dual_err);
    } else {
      const double sigma = p.kernel.rate;
      if (raw_bracket) {
        p.norm = 1.0;
      } else {
        p.norm = p.kernel.coef * gamma_inv(sigma);
        if (p.norm == 0.0) {
          p.skip = true;
          continue;
        }
      }
      const double tol_b = tol_piece / std::fabs(p.norm);
      const double Mr = 2.0 * std::pow(tau, sigma - 1.0) * Wk;
      p.real_cutoff = choose_cutoff(Mr, 0.5 * d - 1.0, tau, V, std::max(1.0, 2.0 * (sigma - 1.0) / tau),
                                    tol_b, &p.real_err);
      const double Md = 2.0 / (kPi * kPi) / V * std::pow(kPi, 1.5) * std::pow(tau, sigma - 0.5) *
                        dual_magnitude(p.dual_terms, tau);
      p.dual_cutoff = choose_cutoff(Md, 0.5 * d, kPi * kPi / tau, 1.0 / V,
                                    std::max(1.0, tau * (p.max_D + 1) / (kPi * kPi)), tol_b, &p.dual_err);
      p.real_err *= std::fabs(p.norm);
      p.dual_err *= std::fabs(p.norm);
    }
  }

  const int deg = max_degree(specs);
  const std::size_t np = pieces.size();

  std::vector<Evaluator> evals;
  for (auto& p : pieces) {
    if (p.skip) continue;
    std::size_t e = 0;
    while (e < evals.size() && !(evals[e].route == p.route && evals[e].rate == p.kernel.rate)) ++e;
    if (e == evals.size()) evals.push_back({p.route, p.kernel.rate});
    auto& ev = evals[e];
    ev.max_D = std::max(ev.max_D, p.max_D);
    ev.real_cutoff = std::max(ev.real_cutoff, p.real_cutoff);
    ev.dual_cutoff = std::max(ev.dual_cutoff, p.dual_cutoff);
    p.eval = e;
  }
  const std::size_t ne = evals.size();

  // Real-space pass.
  double real_max = 0.0;
  for (const auto& p : pieces)
    if (!p.skip && p.route != Route::DualExp) real_max = std::max(real_max, p.real_cutoff);
  std::vector<LatticePoint> real_pts;
  if (real_max > 0.0) {
    check_budget(ball_count(real_max, V), cfg.max_points, "real-space sum");
    real_pts = enumerate_ellipsoid(G, real_max);
  }
  auto real_acc = chunked_sum(real_pts, np, [&](const LatticePoint& pt, std::vector<CompensatedSum>& acc) {
    PowerTable pw(deg);
    pw.set(pt.k[0], pt.k[1], pt.k[2]);
    std::vector<double> kval(ne, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& ev = evals[e];
      if (ev.route == Route::DualExp || pt.q > ev.real_cutoff) continue;
      kval[e] = ev.route == Route::DirectExp
                    ? std::exp(-ev.rate * pt.q)
                    : upper_gamma(ev.rate, tau * pt.q) * std::pow(pt.q, -ev.rate);
    }
    for (std::size_t i = 0; i < np; ++i) {
      const auto& p = pieces[i];
      if (p.skip || p.route == Route::DualExp || pt.q > p.real_cutoff) continue;
      acc[i].add(pw.eval(p.weight) * kval[p.eval]);
    }
  });

  // Dual pass.
  double dual_max = 0.0;
  for (const auto& p : pieces)
    if (!p.skip && p.route != Route::DirectExp) dual_max = std::max(dual_max, p.dual_cutoff);
  std::vector<LatticePoint> dual_pts;
  if (dual_max > 0.0) {
    check_budget(ball_count(dual_max, 1.0 / V), cfg.max_points, "dual sum");
    dual_pts = enumerate_ellipsoid(Gd, dual_max);
  }
  const Eigen::Matrix3d BinvT = Binv.transpose();
  auto dual_acc = chunked_sum(dual_pts, np, [&](const LatticePoint& pt, std::vector<CompensatedSum>& acc) {
    const Eigen::Vector3d q = BinvT * Eigen::Vector3d(pt.k[0], pt.k[1], pt.k[2]);
    double pq[3][2 * kMaxDeg + 1];
    for (int i = 0; i < 3; ++i) {
      pq[i][0] = 1.0;
      for (int l = 1; l <= 2 * kMaxDeg; ++l) pq[i][l] = pq[i][l - 1] * kPi * q[i];
    }
    const double rho = pt.q;
    const double c = kPi * kPi * rho;
    std::vector<std::array<double, 2 * kMaxDeg + 1>> K(ne);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& ev = evals[e];
      if (ev.route == Route::DirectExp || rho > ev.dual_cutoff) continue;
      for (int D = 0; D <= ev.max_D; ++D) {
        if (ev.route == Route::DualExp) {
          K[e][D] = std::pow(kPi, 1.5) * std::pow(ev.rate, -1.5 - 0.5 * D) * std::exp(-c / ev.rate);
        } else {
          const double beta = ev.rate - 1.5 - 0.5 * D;
          K[e][D] = std::pow(kPi, 1.5) * std::pow(c, beta) * upper_gamma(-beta, c / tau);
        }
      }
    }
    for (std::size_t i = 0; i < np; ++i) {
      const auto& p = pieces[i];
      if (p.skip || p.route == Route::DirectExp || rho > p.dual_cutoff) continue;
      const auto& Ke = K[p.eval];
      double s = 0.0;
      for (const auto& t : p.dual_terms) s += t.coef * pq[0][t.l[0]] * pq[1][t.l[1]] * pq[2][t.l[2]] * Ke[t.D];
      acc[i].add(s);
    }
  });

  // Assemble.
  std::vector<CompensatedSum> values(specs.size());
  std::vector<double> errors(specs.size(), 0.0);
  std::vector<double> zero_sum(specs.size(), 0.0), zero_abs(specs.size(), 0.0);
  for (std::size_t i = 0; i < np; ++i) {
    const auto& p = pieces[i];
    if (p.skip) continue;
    const double P0 = p.weight.constant_term();
    double zero = 0.0, zero_scale = 0.0;
    CompensatedSum total;
    if (p.route == Route::DirectExp) {
      total.add(p.kernel.coef * real_acc[i].value());
      errors[p.spec] += p.real_err;
    } else if (p.route == Route::DualExp) {
      const double a = p.kernel.rate;
      for (const auto& t : p.dual_terms)
        if (t.l == std::array<int, 3>{0, 0, 0})
        {
          const double w = std::pow(kPi, 1.5) * std::pow(a, -1.5 - 0.5 * t.D);
          zero += t.coef * w;
          zero_scale += t.scale * w;
        }
      zero *= p.kernel.coef / V;
      zero_scale *= std::fabs(p.kernel.coef) / V;
      total.add(p.kernel.coef / V * dual_acc[i].value());
      total.add(-p.kernel.coef * P0);
      errors[p.spec] += p.dual_err;
    } else {
      const double sigma = p.kernel.rate;
      for (const auto& t : p.dual_terms)
        if (t.l == std::array<int, 3>{0, 0, 0}) {
          const double beta0 = sigma - 1.5 - 0.5 * t.D;
          if (std::fabs(beta0) < 1e-12) {
            if (shape_derivative) continue;
            throw Error(ErrorKind::PoleAt3Halves, "lattice sum has a pole at this exponent");
          }
          const double w = std::pow(kPi, 1.5) * std::pow(tau, beta0) / beta0;
          zero += t.coef * w;
          zero_scale += t.scale * std::fabs(w);
        }
      zero *= p.norm / V;
      zero_scale *= std::fabs(p.norm) / V;
      total.add(p.norm * real_acc[i].value());
      total.add(p.norm / V * dual_acc[i].value());
      total.add(-p.norm * P0 * std::pow(tau, sigma) / sigma);
      errors[p.spec] += p.real_err + p.dual_err;
    }
    zero_sum[p.spec] += zero;
    zero_abs[p.spec] += zero_scale;
    if (!shape_derivative) total.add(zero);
    values[p.spec].merge(total);
  }

  std::vector<SumResult> out(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    if (shape_derivative && std::fabs(zero_sum[s]) > 1e-9 * zero_abs[s] + 1e-300)
      throw Error(ErrorKind::InvalidParameter,
                  "shape-derivative sum has a non-vanishing zero-frequency term (" +
                      fmt_g(zero_sum[s]) + " of " + fmt_g(zero_abs[s]) + ")");
    out[s].value = values[s].value();
    out[s].est_error = errors[s];
    out[s].points_used = real_pts.size() + dual_pts.size();
    out[s].converged = errors[s] <= cfg.target_tol;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Direct strategy.

std::vector<SumResult> direct(const LatticeParams& L, std::span<const SumSpec> specs,
                              const SumConfig& cfg) {
  if (!(cfg.cutoff_growth > 1.0))
    throw Error(ErrorKind::InvalidParameter, "cutoff_growth must exceed 1");
  const double V = L.volume;
  const Eigen::Matrix3d G = gram_matrix(L);
  const int deg = max_degree(specs);

  std::vector<double> eta(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    eta[s] = spec_eta(specs[s]);
    if (!(2.0 * eta[s] > 3.0))
      throw Error(ErrorKind::NotConvergent, "direct sum does not converge absolutely");
  }

  const double growth = std::cbrt(4.0);  // 2^{2/3}
  double lam = std::pow(2000.0 * V * 3.0 / (4.0 * kPi), 2.0 / 3.0);
  std::vector<SumResult> last;
  for (;;) {
    const double lam2 = growth * lam;
    if (ball_count(lam2, V) > double(cfg.max_points)) {
      SumResult partial = last.empty() ? SumResult{std::numeric_limits<double>::quiet_NaN(), 0, 0, false} : last[0];
      throw SumError(ErrorKind::Budget, "point budget exceeded before reaching tolerance", partial);
    }
    const auto pts = enumerate_ellipsoid(G, lam2);
    // Accumulators: [spec][0] up to lam, [spec][1] beyond lam.
    auto acc = chunked_sum(pts, 2 * specs.size(), [&](const LatticePoint& pt, std::vector<CompensatedSum>& a) {
      PowerTable pw(deg);
      pw.set(pt.k[0], pt.k[1], pt.k[2]);
      const std::size_t slot = pt.q <= lam ? 0 : 1;
      for (std::size_t s = 0; s < specs.size(); ++s) {
        double v = 0.0;
        for (const auto& p : specs[s]) v += pw.eval(p.weight) * p.kernel(pt.q);
        a[2 * s + slot].add(v);
      }
    });
    last.assign(specs.size(), SumResult{});
    bool done = true;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      CompensatedSum total = acc[2 * s];
      const double diff = acc[2 * s + 1].value();
      total.merge(acc[2 * s + 1]);
      double est = std::fabs(diff);
      if (std::isfinite(eta[s])) est /= 1.0 - std::pow(2.0, (3.0 - 2.0 * eta[s]) / 3.0);
      last[s] = {total.value(), est, pts.size(), est <= cfg.target_tol};
      done = done && last[s].converged;
    }
    if (done) return last;
    lam *= cfg.cutoff_growth;
  }
}

// ---------------------------------------------------------------------------
// R-shell strategy (FCC-shaped lattices only).

std::vector<SumResult> r_truncated(const LatticeParams& L, std::span<const SumSpec> specs,
                                   const SumConfig& cfg) {
  if (!fcc_shaped(L))
    throw Error(ErrorKind::InvalidParameter, "R-shell summation needs the FCC parameter point");
  if (cfg.t_max < 2) throw Error(ErrorKind::InvalidParameter, "t_max must be at least 2");
  const double C = L.c();
  const int deg = max_degree(specs);
  const auto table = r_shell_table(cfg.t_max);
  if (table->size() > cfg.max_points)
    throw SumError(ErrorKind::Budget, "point budget exceeded in R-shell sum",
                   SumResult{std::numeric_limits<double>::quiet_NaN(), 0, 0, false});
  const double t_inner = cfg.t_max / std::cbrt(4.0);
  auto acc = chunked_sum(*table, 2 * specs.size(), [&](const ShellPoint& pt, std::vector<CompensatedSum>& a) {
    PowerTable pw(deg);
    pw.set(pt.k[0], pt.k[1], pt.k[2]);
    const double q = C * double(pt.r);
    const std::size_t slot = pt.r <= t_inner ? 0 : 1;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      double v = 0.0;
      for (const auto& p : specs[s]) v += pw.eval(p.weight) * p.kernel(q);
      a[2 * s + slot].add(v);
    }
  });
  const double lam_min = min_eigenvalue(gram_matrix(L));
  std::vector<SumResult> out(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    CompensatedSum total = acc[2 * s];
    total.merge(acc[2 * s + 1]);
    double est = 0.0;
    const double eta = spec_eta(specs[s]);
    if (std::isfinite(eta)) {
      est = 2.0 * eta > 3.0
                ? std::fabs(acc[2 * s + 1].value()) / (1.0 - std::pow(2.0, (3.0 - 2.0 * eta) / 3.0))
                : std::numeric_limits<double>::infinity();
    } else {
      for (const auto& p : specs[s]) {
        const double M = std::fabs(p.kernel.coef) * p.weight.magnitude(1.0 / std::sqrt(lam_min));
        est += tail_bound(M, 0.5 * p.weight.degree(), p.kernel.rate, L.volume, C * cfg.t_max);
      }
    }
    out[s] = {total.value(), est, table->size(), est <= cfg.target_tol};
  }
  return out;
}

}  // namespace

SumConfig SumConfig::defaults_for(const Potential& pot) {
  SumConfig cfg;
  cfg.target_tol = std::holds_alternative<Gaussian>(pot.variant()) ? 1e-12 : 1e-9;
  return cfg;
}

SumSpec make_spec(const Polynomial3& weight, const Potential& pot, int order) {
  SumSpec spec;
  for (const auto& k : pot.kernel_terms(order)) spec.push_back({weight, k});
  return spec;
}

std::vector<SumResult> evaluate_sums(const LatticeParams& L, std::span<const SumSpec> specs,
                                     const SumConfig& cfg, bool shape_derivative) {
  L.validate();
  if (!(cfg.target_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "target_tol must be positive");
  if (!(cfg.split_scale > 0.0)) throw Error(ErrorKind::InvalidParameter, "split_scale must be positive");
  switch (cfg.strategy) {
    case SumStrategy::Direct: return direct(L, specs, cfg);
    case SumStrategy::RTruncated: return r_truncated(L, specs, cfg);
    case SumStrategy::GammaAccelerated: break;
  }
  return accelerated(L, specs, cfg, shape_derivative, false);
}

SumResult lattice_sum(const LatticeParams& L, const Polynomial3& weight, const Potential& pot,
                      int order, const SumConfig& cfg) {
  const SumSpec spec = make_spec(weight, pot, order);
  if (!(2.0 * spec_eta(spec) > 3.0))
    throw Error(ErrorKind::NotConvergent, "summand decays too slowly for absolute convergence");
  return evaluate_sums(L, std::span<const SumSpec>(&spec, 1), cfg)[0];
}

SumResult mellin_power_sum(const LatticeParams& L, const Polynomial3& weight, double sigma,
                           const SumConfig& cfg) {
  L.validate();
  const SumSpec spec{{weight, {KernelTerm::Kind::Power, 1.0, sigma}}};
  return accelerated(L, std::span<const SumSpec>(&spec, 1), cfg, false, true)[0];
}

}  // namespace lattab
