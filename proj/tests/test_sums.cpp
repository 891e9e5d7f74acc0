#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "lattab/errors.hpp"
#include "lattab/special.hpp"
#include "lattab/sums.hpp"
#include "oracles.hpp"

using namespace lattab;

namespace {
const double kPi = std::numbers::pi;

SumConfig gamma_cfg(double tol) { return SumConfig{tol}; }
SumConfig direct_cfg(double tol) {
  SumConfig c{tol};
  c.strategy = SumStrategy::Direct;
  return c;
}
}  // namespace

TEST_CASE("cubic Gaussian sum is theta_3(1)^3 - 1") {
  const auto th = oracle::theta3(1.0L);
  const double expect = double(th.th * th.th * th.th - 1);
  CHECK(expect == doctest::Approx(0.2823631).epsilon(1e-6));
  const auto L = named::simple_cubic(1.0);
  for (const auto& cfg : {gamma_cfg(1e-14), direct_cfg(1e-14)}) {
    const auto r = lattice_sum(L, Polynomial3::constant(1), Potential::gaussian(kPi), 0, cfg);
    CHECK(std::fabs(r.value - expect) < 1e-14);
    CHECK(r.converged);
  }
}

TEST_CASE("Gaussian energies agree with an explicit-basis oracle") {
  for (const auto& L : oracle::random_lattices(6, 23))
    for (double a : {0.4, 1.0, 3.0}) {
      const double ref = double(oracle::gaussian_energy(L, a, 16));
      const auto r = lattice_sum(L, Polynomial3::constant(1), Potential::gaussian(a), 0, gamma_cfg(1e-13));
      CHECK(std::fabs(r.value - ref) < 1e-12 * std::max(1.0, ref));
    }
}

TEST_CASE("T-weighted Gaussian sum at FCC is positive") {
  const auto L = fcc_unit_form();
  for (double beta : {0.3, 1.0, 4.0, 12.0}) {
    const auto r = lattice_sum(L, forms::T(), Potential::gaussian(beta), 0, gamma_cfg(1e-15));
    CAPTURE(beta);
    CHECK(r.value > 0.0);
  }
}

TEST_CASE("inverse power at the unit FCC form tends to the kissing number") {
  const auto counts = oracle::r_shell_counts(3);
  CHECK(counts[1] == 12);
  CHECK(counts[2] == 6);
  const double expect = 12.0 + 6.0 * std::pow(2.0, -20.0) + double(counts[3]) * std::pow(3.0, -20.0);
  const auto r = lattice_sum(fcc_unit_form(), Polynomial3::constant(1), Potential::inverse_power(20), 0,
                             gamma_cfg(1e-12));
  CHECK(std::fabs(r.value - expect) < 1e-10);
  CHECK(r.value == doctest::Approx(12.0000057).epsilon(1e-8));
}

TEST_CASE("R-shell identities on explicit weights") {
  const Polynomial3 n = Polynomial3::var(1), p = Polynomial3::var(2);
  auto F = [](double r) { return std::exp(-r); };
  SUBCASE("4n^2 + 4np - p^2 sums to zero") {
    const Polynomial3 w = 4.0 * n * n + 4.0 * n * p - p * p;
    for (int tm : {5, 17, 40}) {
      const double s = r_shell_sum([](double r) { return std::exp(-0.5 * r); }, w, tm);
      const double scale = r_shell_sum([](double r) { return std::exp(-0.5 * r); }, forms::R() * 4.0, tm);
      CHECK(std::fabs(s) <= 1e-13 * scale);
    }
  }
  SUBCASE("p^2 is two thirds of R") {
    const double a = r_shell_sum(F, p * p, 40);
    const double b = r_shell_sum(F, forms::R(), 40) * 2.0 / 3.0;
    CHECK(std::fabs(a - b) < 1e-13 * b);
  }
  SUBCASE("p^4 in terms of R^2 and T") {
    const double a = r_shell_sum(F, p * p * p * p, 40);
    const double b = r_shell_sum(F, forms::R() * forms::R() * (2.0 / 3.0) + forms::T() * (8.0 / 3.0), 40);
    CHECK(std::fabs(a - b) < 1e-13 * b);
  }
}

TEST_CASE("shell table matches exhaustive enumeration") {
  const int tm = 60;
  const auto counts = oracle::r_shell_counts(tm);
  const auto table = r_shell_table(tm);
  std::vector<long long> got(counts.size(), 0);
  for (const auto& pt : *table) {
    REQUIRE(pt.r == oracle::R(pt.k[0], pt.k[1], pt.k[2]));
    REQUIRE(pt.t == oracle::T(pt.k[0], pt.k[1], pt.k[2]));
    ++got[std::size_t(pt.r)];
  }
  CHECK(got == counts);
  for (int t = 1; t <= tm; ++t) CHECK(r_shell_box_bound(t) >= oracle::r_box(t) - 1);
}

TEST_CASE("cumulative T") {
  CHECK(cumulative_T(1) == 0);
  for (int t = 1; t <= 50; ++t) {
    CAPTURE(t);
    CHECK(cumulative_T(t) == oracle::cumulative_T(t, oracle::r_box(t)));
    if (t >= 2) CHECK(cumulative_T(t) > 0);
  }
}

TEST_CASE("doubling t_max leaves decayed shell sums unchanged") {
  for (double beta : {1.0, 2.0}) {
    auto F = [beta](double r) { return std::exp(-beta * r); };
    for (const auto& w : {Polynomial3::constant(1), forms::R(), forms::T()}) {
      const double a = r_shell_sum(F, w, 40), b = r_shell_sum(F, w, 80);
      CHECK(std::fabs(a - b) < 1e-10 * std::fabs(b));
    }
  }
  // At beta = 0.5 the shells past 40 still carry about e^{-20} times a growing
  // multiplicity, so the change is the size of that tail rather than 1e-10.
  auto F = [](double r) { return std::exp(-0.5 * r); };
  for (const auto& w : {Polynomial3::constant(1), forms::R(), forms::T()}) {
    const double a = r_shell_sum(F, w, 40), b = r_shell_sum(F, w, 80);
    double tail = 0.0;
    for (const auto& pt : *r_shell_table(80))
      if (pt.r > 40) tail += std::fabs(w(pt.k[0], pt.k[1], pt.k[2])) * F(double(pt.r));
    CHECK(std::fabs(a - b) <= tail);
    CHECK(std::fabs(a - b) < 1e-4 * std::fabs(b));
  }
}

TEST_CASE("sums are invariant under a change of basis") {
  // x -> x + 1 is the basis change v2 -> v2 + v1 and describes the same lattice.
  for (const auto& L : oracle::random_lattices(5, 41)) {
    LatticeParams M = L;
    M.x += 1.0;
    CHECK(gram_equivalent(L, M, 1e-12) == false);
    const auto a = lattice_sum(L, Polynomial3::constant(1), Potential::gaussian(0.8), 0, gamma_cfg(1e-13));
    const auto b = lattice_sum(M, Polynomial3::constant(1), Potential::gaussian(0.8), 0, gamma_cfg(1e-13));
    CHECK(std::fabs(a.value - b.value) < 1e-12 * std::max(1.0, a.value));
    const auto c = lattice_sum(L, Polynomial3::constant(1), Potential::inverse_power(3), 0, gamma_cfg(1e-11));
    const auto d = lattice_sum(M, Polynomial3::constant(1), Potential::inverse_power(3), 0, gamma_cfg(1e-11));
    CHECK(std::fabs(c.value - d.value) < 1e-10 * c.value);
  }
}

TEST_CASE("results do not depend on the worker count") {
  const auto L = oracle::random_lattices(1, 77)[0];
  auto run = [&] {
    std::vector<double> v;
    v.push_back(lattice_sum(L, forms::R(), Potential::inverse_power(6), 0, direct_cfg(1e-9)).value);
    v.push_back(lattice_sum(L, Polynomial3::constant(1), Potential::gaussian(0.3), 0, gamma_cfg(1e-13)).value);
    v.push_back(lattice_sum(L, Polynomial3::constant(1), Potential::lennard_jones(2, 1, 3, 6), 1, gamma_cfg(1e-10)).value);
    v.push_back(r_shell_sum([](double r) { return std::exp(-r); }, forms::T(), 40));
    return v;
  };
  const char* old = std::getenv("LATTAB_THREADS");
  const std::string saved = old ? old : "";
  setenv("LATTAB_THREADS", "1", 1);
  const auto one = run();
  setenv("LATTAB_THREADS", "4", 1);
  const auto four = run();
  setenv("LATTAB_THREADS", "3", 1);
  const auto three = run();
  if (old)
    setenv("LATTAB_THREADS", saved.c_str(), 1);
  else
    unsetenv("LATTAB_THREADS");
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i] == four[i]);
    CHECK(one[i] == three[i]);
  }
}

TEST_CASE("direct and accelerated strategies agree") {
  for (const auto& L : oracle::random_lattices(4, 5)) {
    for (double s : {4.0, 6.0, 9.0}) {
      const auto a = lattice_sum(L, Polynomial3::constant(1), Potential::inverse_power(s), 0, direct_cfg(1e-9));
      const auto b = lattice_sum(L, Polynomial3::constant(1), Potential::inverse_power(s), 0, gamma_cfg(1e-11));
      CHECK(std::fabs(a.value - b.value) < 2e-9 * std::max(1.0, b.value));
    }
    const Polynomial3 w = forms::sum_of_squares();
    const auto a = lattice_sum(L, w, Potential::gaussian(1.1), 2, direct_cfg(1e-13));
    const auto b = lattice_sum(L, w, Potential::gaussian(1.1), 2, gamma_cfg(1e-13));
    CHECK(std::fabs(a.value - b.value) < 1e-12 * std::max(1.0, std::fabs(b.value)));
  }
}

TEST_CASE("R-shell strategy agrees at the FCC point") {
  SumConfig rs{1e-12};
  rs.strategy = SumStrategy::RTruncated;
  rs.t_max = 120;
  const auto L = named::fcc(1.0);
  const auto a = lattice_sum(L, forms::R(), Potential::gaussian(1.0), 0, rs);
  const auto b = lattice_sum(L, forms::R(), Potential::gaussian(1.0), 0, gamma_cfg(1e-14));
  CHECK(std::fabs(a.value - b.value) < 1e-12 * b.value);
  CHECK_THROWS_AS(lattice_sum(named::simple_cubic(1.0), forms::R(), Potential::gaussian(1.0), 0, rs), Error);
}

TEST_CASE("slowly decaying sums are rejected") {
  CHECK_THROWS_AS(lattice_sum(named::fcc(1.0), Polynomial3::constant(1), Potential::inverse_power(1.5), 0,
                              gamma_cfg(1e-9)),
                  Error);
  // Weight of degree 2 needs s > 5/2.
  try {
    lattice_sum(named::fcc(1.0), forms::R(), Potential::inverse_power(2.4), 0, gamma_cfg(1e-9));
    FAIL("expected NotConvergent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConvergent);
  }
}

TEST_CASE("point budget is enforced with a partial result") {
  SumConfig c = direct_cfg(1e-15);
  c.max_points = 2000;
  try {
    lattice_sum(named::simple_cubic(1.0), Polynomial3::constant(1), Potential::inverse_power(2), 0, c);
    FAIL("expected Budget");
  } catch (const SumError& e) {
    CHECK(e.kind() == ErrorKind::Budget);
    CHECK_FALSE(e.partial().converged);
  }
}

TEST_CASE("Mellin power sum continues the Epstein zeta") {
  const auto L = named::simple_cubic(1.0);
  const auto r = mellin_power_sum(L, Polynomial3::constant(1), 2.0, gamma_cfg(1e-12));
  // Gamma(2) zeta(4)
  CHECK(r.value == doctest::Approx(16.5323159597617).epsilon(1e-11));
}
