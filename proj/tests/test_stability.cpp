#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lattab/errors.hpp"
#include "lattab/stability.hpp"

using namespace lattab;

namespace {
const Potential kLJ = Potential::lennard_jones(2, 1, 3, 6);
const LennardJones kLJParams{2, 1, 3, 6};

Classification cls(const Potential& f, const LatticeParams& L, double tol = 1e-12) {
  return classify(f, L, SumConfig{tol}).classification;
}

// V-grid 0.6, 0.61, ..., 2.0 and the classifications on it.
std::vector<std::pair<double, Classification>> sweep(LatticeParams (*make)(double)) {
  std::vector<std::pair<double, Classification>> out;
  for (int i = 60; i <= 200; ++i) out.push_back({i / 100.0, cls(kLJ, make(i / 100.0), 1e-11)});
  return out;
}

struct Segment {
  Classification c;
  double first, last;
};
std::vector<Segment> segments(const std::vector<std::pair<double, Classification>>& s) {
  std::vector<Segment> out;
  for (const auto& [V, c] : s) {
    if (out.empty() || out.back().c != c)
      out.push_back({c, V, V});
    else
      out.back().last = V;
  }
  return out;
}
}  // namespace

TEST_CASE("eigenvalue sign patterns") {
  CHECK(classify_eigenvalues({1, 2, 3, 4, 5}, 1e-8) == Classification::LocalMin);
  CHECK(classify_eigenvalues({-5, -4, -3, -2, -1}, 1e-8) == Classification::LocalMax);
  CHECK(classify_eigenvalues({-1, 2, 3, 4, 5}, 1e-8) == Classification::Saddle);
  CHECK(classify_eigenvalues({1e-12, 2, 3, 4, 5}, 1e-8) == Classification::Degenerate);
}

TEST_CASE("Lennard-Jones at the cubic lattice") {
  CHECK(cls(kLJ, named::simple_cubic(1.27)) == Classification::LocalMin);
  CHECK(cls(kLJ, named::simple_cubic(1.0)) == Classification::Saddle);
}

TEST_CASE("Gaussians at the cubic lattice are saddles") {
  for (double a : {0.5, 1.0, 2.0, 5.0})
    for (double V : {0.8, 1.0, 1.5}) CHECK(cls(Potential::gaussian(a), named::simple_cubic(V)) == Classification::Saddle);
}

TEST_CASE("cubic thresholds") {
  const auto t = lj_z3_thresholds(kLJParams);
  REQUIRE(t.size() == 4);
  CHECK(t[0].name == "V1");
  // Frozen from this implementation; V2 = V4 because the (u,v) block of the
  // cubic Lennard-Jones Hessian is a volume-dependent multiple of a fixed
  // positive definite matrix.
  CHECK(t[0].value == doctest::Approx(1.200833).epsilon(2e-6));
  CHECK(t[1].value == doctest::Approx(1.404874).epsilon(2e-6));
  CHECK(t[2].value == doctest::Approx(1.404874).epsilon(2e-6));
  CHECK(t[3].value == doctest::Approx(1.404874).epsilon(2e-6));
  for (const auto& r : t) {
    CHECK(r.hi - r.lo <= 1e-6);
    CHECK(r.sign_changes == 1);
  }
}

TEST_CASE("cubic classification sweep matches the thresholds") {
  const auto t = lj_z3_thresholds(kLJParams);
  const double v1 = t[0].value, v2 = t[1].value;
  const auto seg = segments(sweep(named::simple_cubic));
  REQUIRE(seg.size() == 3);
  CHECK(seg[0].c == Classification::Saddle);
  CHECK(seg[1].c == Classification::LocalMin);
  CHECK(seg[2].c == Classification::Saddle);
  CHECK(seg[0].last < v1);
  CHECK(seg[1].first > v1);
  CHECK(seg[1].first - v1 <= 0.01);
  CHECK(seg[1].last < v2);
  CHECK(seg[2].first > v2);
  CHECK(seg[2].first - v2 <= 0.01);
  for (const auto& s : seg) CHECK(s.c != Classification::LocalMax);
}

TEST_CASE("FCC thresholds") {
  const auto t = lj_fcc_thresholds(kLJParams);
  CHECK(t.v_lo == doctest::Approx(1.0911134362).epsilon(1e-9));
  CHECK(t.v_hi == doctest::Approx(1.3130700767).epsilon(1e-9));
  CHECK(t.g1 > 0.0);
  CHECK(t.h2 > 0.0);
}

TEST_CASE("FCC classification sweep matches the thresholds") {
  const auto t = lj_fcc_thresholds(kLJParams);
  const auto seg = segments(sweep(named::fcc));
  REQUIRE(seg.size() == 3);
  CHECK(seg[0].c == Classification::LocalMin);
  CHECK(seg[1].c == Classification::Saddle);
  CHECK(seg[2].c == Classification::LocalMax);
  CHECK(seg[0].last < t.v_lo);
  CHECK(seg[1].first > t.v_lo);
  CHECK(seg[1].first - t.v_lo <= 0.01);
  CHECK(seg[1].last < t.v_hi);
  CHECK(seg[2].first > t.v_hi);
  CHECK(seg[2].first - t.v_hi <= 0.01);
  CHECK(cls(kLJ, named::fcc(1.2)) == Classification::Saddle);
  CHECK(cls(kLJ, named::fcc(1.5)) == Classification::LocalMax);
}

TEST_CASE("BCC under Lennard-Jones") {
  // Recorded behaviour: saddle below about 1.15, local maximum from 1.2 on.
  CHECK(cls(kLJ, named::bcc(1.0)) == Classification::Saddle);
  CHECK(cls(kLJ, named::bcc(1.05)) == Classification::Saddle);
  CHECK(cls(kLJ, named::bcc(1.2)) == Classification::LocalMax);
  CHECK(cls(kLJ, named::bcc(1.35)) == Classification::LocalMax);
}

TEST_CASE("Gaussian regimes of FCC and BCC") {
  CHECK(cls(Potential::gaussian(12.0), named::fcc(1.0)) == Classification::LocalMin);
  CHECK(cls(Potential::gaussian(0.05), named::fcc(1.0)) == Classification::Saddle);
  CHECK(cls(Potential::gaussian(0.05), named::bcc(1.0)) == Classification::LocalMin);
  CHECK(cls(Potential::gaussian(12.0), named::bcc(1.0)) == Classification::Saddle);
}

TEST_CASE("theta scan") {
  std::vector<double> alphas;
  for (int i = 0; i < 60; ++i) alphas.push_back(0.05 * std::pow(15.0 / 0.05, i / 59.0));
  const auto s = theta_alpha_scan(1.0, alphas);
  REQUIRE(s.rows.size() == 60);
  CHECK_FALSE(s.ambiguous);
  REQUIRE(s.d3_transitions.size() == 1);
  REQUIRE(s.d3_dual_transitions.size() == 1);
  CHECK(s.d3_transitions[0].from == Classification::Saddle);
  CHECK(s.d3_transitions[0].to == Classification::LocalMin);
  CHECK(s.d3_dual_transitions[0].from == Classification::LocalMin);
  CHECK(s.d3_dual_transitions[0].to == Classification::Saddle);
  CHECK(s.alpha0 == doctest::Approx(2.095366).epsilon(1e-5));
  CHECK(s.alpha1 == s.alpha0);
  // The dual crossover sits at pi^2 over the direct one.
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(s.d3_dual_transitions[0].alpha == doctest::Approx(pi2 / s.alpha0).epsilon(1e-5));
}

TEST_CASE("BCC at alpha and FCC at pi^2/alpha share a signature") {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (double a : {0.1, 0.5, 1.0, 3.0, 8.0, 30.0}) {
    const auto b = classify(Potential::gaussian(a), named::bcc(1.0), SumConfig{1e-12});
    const auto f = classify(Potential::gaussian(pi2 / a), named::fcc(1.0), SumConfig{1e-12});
    CAPTURE(a);
    CHECK(b.classification == f.classification);
  }
  // Below pi^2 over the crossover BCC is a local minimum with all eigenvalues positive.
  for (double a : {0.2, 1.0, 4.0}) {
    const auto b = classify(Potential::gaussian(a), named::bcc(1.0), SumConfig{1e-12});
    for (double l : b.eigenvalues) CHECK(l > 0.0);
  }
}

TEST_CASE("sign quantities") {
  const auto big = sign_quantities_theta(15.0);
  CHECK(big.q_uu > 0.0);
  CHECK(big.q_xx > 0.0);
  CHECK(big.q_zz > 0.0);
  CHECK(big.det_uv > 0.0);
  CHECK(big.det_xy > 0.0);

  // Small beta: q_uu is negative while q_xx stays positive.
  const auto small = sign_quantities_theta(0.05);
  CHECK(small.from_hessian);
  CHECK(small.q_uu < 0.0);
  CHECK(small.q_xx > 0.0);
  CHECK(small.q_zz > 0.0);
  CHECK(small.det_uv < 0.0);
  CHECK(small.det_xy < 0.0);
  const auto mid = sign_quantities_theta(0.5);
  CHECK(mid.q_uu == doctest::Approx(-5.8288e-9).epsilon(1e-4));
  CHECK(mid.q_xx == doctest::Approx(2.4447e-8).epsilon(1e-4));
  CHECK(mid.q_zz == doctest::Approx(5.4722e-8).epsilon(1e-4));
}

TEST_CASE("sign quantities match the closed-form Hessian") {
  const double C = named::fcc(1.0).c();
  for (double beta : {1.0, 2.0, 5.0}) {
    const auto q = sign_quantities_theta(beta);
    const auto H = hessian_d3_closed(Potential::gaussian(beta / C), 1.0, SumConfig{1e-14}).m;
    CHECK(std::fabs(0.5 * beta * q.q_uu - H(kU, kU)) < 1e-10 * std::max(1.0, std::fabs(H(kU, kU))));
  }
}

TEST_CASE("sign quantities agree with the classification") {
  const double C = named::fcc(1.0).c();
  for (double beta : {0.3, 0.7, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 8.0, 15.0}) {
    const auto q = sign_quantities_theta(beta);
    const bool all_pos = q.q_uu > 0 && q.q_xx > 0 && q.q_zz > 0 && q.det_uv > 0 && q.det_xy > 0;
    const auto c = cls(Potential::gaussian(beta / C), named::fcc(1.0));
    CAPTURE(beta);
    CHECK(all_pos == (c == Classification::LocalMin));
  }
}

TEST_CASE("classifications are stable under a tighter tolerance") {
  for (double V : {1.0, 1.27, 1.5})
    CHECK(cls(kLJ, named::simple_cubic(V), 1e-11) == cls(kLJ, named::simple_cubic(V), 1e-12));
  for (double a : {0.1, 1.0, 12.0})
    CHECK(cls(Potential::gaussian(a), named::fcc(1.0), 1e-12) == cls(Potential::gaussian(a), named::fcc(1.0), 1e-13));
}

TEST_CASE("errors") {
  LatticeParams off = named::fcc(1.0);
  off.x = 0.1;
  try {
    classify(Potential::gaussian(1.0), off, SumConfig{1e-12});
    FAIL("expected NotCritical");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCritical);
  }
  try {
    lj_z3_thresholds(kLJParams, ScanWindow{2.0, 3.0, 0.01, 1e-6});
    FAIL("expected NoBracket");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoBracket);
  }
}
