#include "lattab/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "lattab/errors.hpp"

namespace lattab {

namespace {

void require_pointwise(const Potential& pot) {
  if (!(2.0 * pot.decay_exponent() > 3.0))
    throw Error(ErrorKind::NotConvergent, "energy is not defined pointwise for decay exponent <= 3/2");
}

using P3 = Polynomial3;

}  // namespace

double Gradient5::norm_inf() const {
  double n = 0.0;
  for (double x : d) n = std::max(n, std::fabs(x));
  return n;
}

FormDerivatives form_derivatives(const LatticeParams& L) {
  const double C = L.c(), u = L.u, v = L.v, x = L.x, y = L.y, z = L.z;
  const P3 m = P3::var(0), n = P3::var(1), p = P3::var(2);
  const P3 A = m + x * n + y * p;
  const P3 B = n + z * p;
  const P3 A2 = A * A, B2 = B * B, p2 = p * p;

  FormDerivatives d;
  d.first[kU] = C * (-1.0 / (u * u) * A2 - v * v / (u * u) * B2 + u / (v * v) * p2);
  d.first[kV] = C * (2.0 * v / u * B2 - u * u / (v * v * v) * p2);
  d.first[kX] = (2.0 * C / u) * (n * A);
  d.first[kY] = (2.0 * C / u) * (p * A);
  d.first[kZ] = (2.0 * C * v * v / u) * (p * B);

  auto& s = d.second;
  const double u3 = u * u * u;
  s[kU][kU] = C * (2.0 / u3 * A2 + 2.0 * v * v / u3 * B2 + 1.0 / (v * v) * p2);
  s[kV][kV] = C * (2.0 / u * B2 + 3.0 * u * u / (v * v * v * v) * p2);
  s[kU][kV] = -2.0 * C * (v / (u * u) * B2 + u / (v * v * v) * p2);
  s[kU][kX] = (-2.0 * C / (u * u)) * (n * A);
  s[kU][kY] = (-2.0 * C / (u * u)) * (p * A);
  s[kU][kZ] = (-2.0 * C * v * v / (u * u)) * (p * B);
  s[kV][kZ] = (4.0 * C * v / u) * (p * B);
  s[kX][kX] = (2.0 * C / u) * (n * n);
  s[kY][kY] = (2.0 * C / u) * p2;
  s[kZ][kZ] = (2.0 * C * v * v / u) * p2;
  s[kX][kY] = (2.0 * C / u) * (n * p);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < i; ++j) s[i][j] = s[j][i];
  return d;
}

SumResult energy(const Potential& pot, const LatticeParams& L, const SumConfig& cfg) {
  require_pointwise(pot);
  const SumSpec spec = make_spec(P3::constant(1.0), pot, 0);
  return evaluate_sums(L, std::span<const SumSpec>(&spec, 1), cfg)[0];
}

Gradient5 gradient(const Potential& pot, const LatticeParams& L, const SumConfig& cfg) {
  require_pointwise(pot);
  const auto d = form_derivatives(L);
  std::vector<SumSpec> specs;
  for (int i = 0; i < 5; ++i) specs.push_back(make_spec(d.first[i], pot, 1));
  const auto r = evaluate_sums(L, specs, cfg, true);
  Gradient5 g;
  for (int i = 0; i < 5; ++i) {
    g.d[i] = r[i].value;
    g.est_error = std::max(g.est_error, r[i].est_error);
  }
  return g;
}

Hessian5 hessian(const Potential& pot, const LatticeParams& L, const SumConfig& cfg) {
  require_pointwise(pot);
  const auto d = form_derivatives(L);
  std::vector<SumSpec> specs;
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      SumSpec spec = make_spec(d.first[i] * d.first[j], pot, 2);
      for (auto& piece : make_spec(d.second[i][j], pot, 1)) spec.push_back(piece);
      specs.push_back(std::move(spec));
      idx.emplace_back(i, j);
    }
  const auto r = evaluate_sums(L, specs, cfg, true);
  Hessian5 H;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto [i, j] = idx[k];
    H.m(i, j) = H.m(j, i) = r[k].value;
    H.est_error = std::max(H.est_error, r[k].est_error);
  }
  return H;
}

namespace {

// sum of coef * weight * f^(order)(Q) as a single spec.
struct Part {
  double coef;
  P3 weight;
  int order;
};
SumSpec combine(const Potential& pot, std::initializer_list<Part> parts) {
  SumSpec out;
  for (const auto& p : parts) {
    const SumSpec s = make_spec(p.weight * p.coef, pot, p.order);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

// Each entry is summed as one shape derivative, so exponentially small entries
// keep their relative accuracy instead of being differences of O(1) sums.
Hessian5 assemble(const LatticeParams& L, const std::vector<SumSpec>& specs, const SumConfig& cfg,
                  const std::vector<std::pair<int, int>>& slots) {
  const auto r = evaluate_sums(L, specs, cfg, true);
  Hessian5 H;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto [a, b] = slots[i];
    H.m(a, b) = H.m(b, a) = r[i].value;
    H.est_error = std::max(H.est_error, r[i].est_error);
  }
  return H;
}

}  // namespace

Hessian5 hessian_d3_closed(const Potential& pot, double volume, const SumConfig& cfg) {
  require_pointwise(pot);
  const LatticeParams L = named::fcc(volume);
  const double C = L.c(), C2 = C * C;
  const P3 R = forms::R(), R2 = R * R, T = forms::T();
  const std::vector<SumSpec> specs{
      combine(pot, {{0.5 * C2, R2, 2}, {2.0 * C, R, 1}, {6.0 * C2, T, 2}}),
      combine(pot, {{5.0 / 6.0 * C2, R2, 2}, {8.0 / 3.0 * C, R, 1}, {14.0 / 3.0 * C2, T, 2}}),
      combine(pot, {{C2 / 3.0, R2, 2}, {C, R, 1}, {4.0 / 3.0 * C2, T, 2}}),
      combine(pot, {{2.0 / 3.0 * C2, R2, 2}, {4.0 / 3.0 * C, R, 1}, {-8.0 / 3.0 * C2, T, 2}}),
      combine(pot, {{-C2 / 3.0, R2, 2}, {-2.0 / 3.0 * C, R, 1}, {4.0 / 3.0 * C2, T, 2}}),
  };
  Hessian5 H = assemble(L, specs, cfg, {{kU, kU}, {kV, kV}, {kX, kX}, {kY, kY}, {kX, kY}});
  H.m(kZ, kZ) = H.m(kY, kY);
  H.m(kU, kV) = H.m(kV, kU) = -H.m(kU, kU);
  return H;
}

Hessian5 hessian_z3_closed(const Potential& pot, double volume, const SumConfig& cfg) {
  require_pointwise(pot);
  const LatticeParams L = named::simple_cubic(volume);
  const double C = L.c(), C2 = C * C;
  const double c13 = std::cbrt(2.0);
  const P3 n = P3::var(1), p = P3::var(2);
  const P3 d = p * p * p * p - p * p * n * n, p2 = p * p;
  const std::vector<SumSpec> specs{
      combine(pot, {{3.0 / c13 * C2, d, 2}, {3.0 * C, p2, 1}}),
      combine(pot, {{4.0 * c13 * C2, d, 2}, {4.0 * c13 * c13 * C, p2, 1}}),
      combine(pot, {{2.0 * c13 * C2, p2 * n * n, 2}, {c13 * c13 * C, p2, 1}}),
      combine(pot, {{-3.0 * C2, d, 2}, {-3.0 * c13 * C, p2, 1}}),
  };
  Hessian5 H = assemble(L, specs, cfg, {{kU, kU}, {kV, kV}, {kX, kX}, {kU, kV}});
  H.m(kY, kY) = H.m(kZ, kZ) = H.m(kX, kX);
  return H;
}

CubicHValues lj_h_values(double x, const SumConfig& cfg) {
  if (!(x > 1.5)) throw Error(ErrorKind::NotConvergent, "cubic h-values need x > 3/2");
  SumConfig c = cfg;
  c.strategy = SumStrategy::GammaAccelerated;
  const P3 n = P3::var(1), p = P3::var(2);
  const KernelTerm k2{KernelTerm::Kind::Power, 1.0, x + 2.0};
  const KernelTerm k1{KernelTerm::Kind::Power, 1.0, x + 1.0};
  const std::vector<SumSpec> specs{{{p * p * p * p - p * p * n * n, k2}}, {{p * p, k1}}, {{p * p * n * n, k2}}};
  // Unit-volume cubic lattice: Q = m^2 + n^2 + p^2.
  LatticeParams L = named::simple_cubic(1.0);
  const auto r = evaluate_sums(L, specs, c);
  CubicHValues h{x, r[0].value, r[1].value, r[2].value, 0, 0, 0, 0};
  h.h1 = 3.0 * (x + 1.0) * h.S1 - 3.0 * h.S2;
  h.h2 = (x + 1.0) * h.S1 - h.S2;
  h.h3 = 2.0 * (x + 1.0) * h.S3 - h.S2;
  h.h4 = -h.h1;
  return h;
}

Z3SecondDerivatives z3_lj_second_derivatives(const LennardJones& lj, double volume,
                                             const CubicHValues& h_x1, const CubicHValues& h_x2) {
  const double C = named::simple_cubic(volume).c();
  Z3SecondDerivatives out{0, 0, 0, 0};
  auto add = [&](double a, const CubicHValues& h) {
    const double x = h.x;
    const double f = a * x * std::pow(C, -x);
    out.uu += f * std::pow(2.0, (x + 1.0) / 3.0) * h.h1;
    out.vv += f * std::pow(2.0, 3.0 + x / 3.0) * h.h2;
    out.xx += f * std::pow(2.0, 1.0 + x / 3.0) * h.h3;
    out.uv += f * std::pow(2.0, (x + 2.0) / 3.0) * h.h4;
  };
  add(lj.a2, h_x2);
  add(-lj.a1, h_x1);
  return out;
}

namespace {

double shifted_energy(const Potential& pot, const LatticeParams& L, const SumConfig& cfg,
                      std::initializer_list<std::pair<int, double>> shifts) {
  auto q = L.moduli();
  for (auto [i, h] : shifts) q[i] += h;
  return energy(pot, LatticeParams::from_moduli(q, L.volume), cfg).value;
}

}  // namespace

Gradient5 gradient_fd(const Potential& pot, const LatticeParams& L, const SumConfig& cfg, double h) {
  Gradient5 g;
  for (int i = 0; i < 5; ++i)
    g.d[i] = (shifted_energy(pot, L, cfg, {{i, h}}) - shifted_energy(pot, L, cfg, {{i, -h}})) / (2.0 * h);
  return g;
}

Hessian5 hessian_fd(const Potential& pot, const LatticeParams& L, const SumConfig& cfg, double h) {
  Hessian5 H;
  const double e0 = energy(pot, L, cfg).value;
  for (int i = 0; i < 5; ++i) {
    H.m(i, i) = (shifted_energy(pot, L, cfg, {{i, h}}) - 2.0 * e0 + shifted_energy(pot, L, cfg, {{i, -h}})) / (h * h);
    for (int j = i + 1; j < 5; ++j) {
      const double pp = shifted_energy(pot, L, cfg, {{i, h}, {j, h}});
      const double pm = shifted_energy(pot, L, cfg, {{i, h}, {j, -h}});
      const double mp = shifted_energy(pot, L, cfg, {{i, -h}, {j, h}});
      const double mm = shifted_energy(pot, L, cfg, {{i, -h}, {j, -h}});
      H.m(i, j) = H.m(j, i) = (pp - pm - mp + mm) / (4.0 * h * h);
    }
  }
  return H;
}

Hessian5 hessian_fd_richardson(const Potential& pot, const LatticeParams& L, const SumConfig& cfg, double h) {
  // Steps h and 2h cancel the h^2 error term; a larger h keeps rounding small.
  Hessian5 H;
  H.m = (4.0 * hessian_fd(pot, L, cfg, h).m - hessian_fd(pot, L, cfg, 2.0 * h).m) / 3.0;
  return H;
}

}  // namespace lattab
