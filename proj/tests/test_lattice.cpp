#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "lattab/errors.hpp"
#include "lattab/lattice.hpp"
#include "oracles.hpp"

using namespace lattab;

namespace {
const double c13 = std::cbrt(2.0);

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

// Smallest 60 nonzero norms, enough to tell the three cubic lattices apart.
std::vector<double> short_norms(const LatticeParams& L) {
  std::vector<double> q;
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n)
      for (int p = -6; p <= 6; ++p)
        if (m || n || p) q.push_back(quadratic_form(L, m, n, p));
  std::sort(q.begin(), q.end());
  q.resize(60);
  return q;
}
}  // namespace

TEST_CASE("quadratic form at the named points") {
  CHECK(quadratic_form(named::fcc(1.0), 1, 0, 0) == doctest::Approx(c13).epsilon(1e-15));
  CHECK(quadratic_form(named::simple_cubic(1.0), 2, 1, 0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(quadratic_form(named::fcc(1.0), 0, 1, 1) == doctest::Approx(3.0 * c13).epsilon(1e-15));
  // Q = C R at D3 for any volume.
  const auto L = named::fcc(2.5);
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      for (int p = -3; p <= 3; ++p)
        CHECK(rel(quadratic_form(L, m, n, p), L.c() * double(form_R(m, n, p))) < 1e-14);
}

TEST_CASE("quadratic form is positive away from the origin") {
  for (const auto& L : oracle::random_lattices(20, 7))
    for (int m = -2; m <= 2; ++m)
      for (int n = -2; n <= 2; ++n)
        for (int p = -2; p <= 2; ++p)
          if (m || n || p) CHECK(quadratic_form(L, m, n, p) > 0.0);
}

TEST_CASE("FCC basis vectors") {
  const Basis3 b = basis(named::fcc(1.0));
  const double sc = std::sqrt(c13);
  CHECK((b.v1 - Eigen::Vector3d(sc, 0, 0)).norm() < 1e-15);
  CHECK((b.v2 - Eigen::Vector3d(0, sc, 0)).norm() < 1e-15);
  CHECK((b.v3 - Eigen::Vector3d(sc / 2, sc / 2, std::sqrt(2 * c13) / 2)).norm() < 1e-15);
}

TEST_CASE("simple cubic basis is orthonormal at unit volume") {
  const Eigen::Matrix3d G = basis(named::simple_cubic(1.0)).gram();
  CHECK((G - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("basis reproduces the quadratic form") {
  for (const auto& L : oracle::random_lattices(30, 11)) {
    const Basis3 b = basis(L);
    for (int m = -5; m <= 5; ++m)
      for (int n = -5; n <= 5; ++n)
        for (int p = -5; p <= 5; ++p) {
          const Eigen::Vector3d v = m * b.v1 + n * b.v2 + p * b.v3;
          CHECK(std::fabs(quadratic_form(L, m, n, p) - v.squaredNorm()) < 1e-12 * std::max(1.0, v.squaredNorm()));
        }
  }
}

TEST_CASE("determinant equals the volume") {
  for (const auto& L : oracle::random_lattices(100, 3))
    CHECK(std::fabs(basis(L).determinant() - L.volume) < 1e-12 * L.volume);
}

TEST_CASE("params_from_basis round trips") {
  const auto d3 = params_from_basis(basis(named::fcc(1.0)));
  CHECK(d3.u == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d3.v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(d3.x) < 1e-12);
  CHECK(d3.y == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d3.z == doctest::Approx(0.5).epsilon(1e-12));

  const auto z3 = params_from_basis(basis(named::simple_cubic(8.0)));
  CHECK(z3.u == doctest::Approx(c13).epsilon(1e-12));
  CHECK(z3.volume == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(std::fabs(z3.y) + std::fabs(z3.z) + std::fabs(z3.x) < 1e-12);

  for (const auto& L : oracle::random_lattices(100, 5)) {
    const auto R = params_from_basis(basis(L));
    const auto a = L.moduli(), b = R.moduli();
    for (int i = 0; i < 5; ++i) CHECK(std::fabs(a[i] - b[i]) < 1e-10);
    CHECK(std::fabs(R.volume - L.volume) < 1e-10 * L.volume);
  }
}

TEST_CASE("degenerate bases are rejected") {
  Basis3 b{Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(1, 1, 1e-14)};
  CHECK_THROWS_AS(params_from_basis(b), Error);
  try {
    params_from_basis(b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateBasis);
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS((LatticeParams{-1.0, 1.0, 0, 0, 0, 1.0}.validate()), Error);
  CHECK_THROWS_AS((LatticeParams{1.0, 0.0, 0, 0, 0, 1.0}.validate()), Error);
  CHECK_THROWS_AS((LatticeParams{1.0, 1.0, 0, 0, 0, -2.0}.validate()), Error);
}

TEST_CASE("dual of FCC is BCC") {
  // Oracle: inverse transpose of the FCC basis, and a literal BCC basis a(1,0,0), a(0,1,0), a(1/2,1/2,1/2), a^3 = 2.
  const Eigen::Matrix3d B = basis(named::fcc(1.0)).matrix();
  const Eigen::Matrix3d Bd = B.inverse().transpose();
  const LatticeParams from_inverse = params_from_basis(Basis3::from_matrix(Bd));
  const double a = c13;
  Eigen::Matrix3d lit;
  lit << a, 0, a / 2, 0, a, a / 2, 0, 0, a / 2;
  const LatticeParams literal = params_from_basis(Basis3::from_matrix(lit));

  const LatticeParams expect = named::bcc(1.0);
  CHECK(expect.u == doctest::Approx(1.0 / c13));
  // The raw inverse-transpose basis is another basis of the same lattice.
  const auto na = short_norms(from_inverse), nb = short_norms(expect);
  for (std::size_t i = 0; i < na.size(); ++i) CHECK(na[i] == doctest::Approx(nb[i]).epsilon(1e-12));
  CHECK(from_inverse.volume == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& got : {dual(named::fcc(1.0)), literal}) {
    CHECK(gram_equivalent(got, expect, 1e-12));
    CHECK(got.volume == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(gram_equivalent(dual(named::bcc(2.0)), named::fcc(0.5), 1e-12));
}

TEST_CASE("simple cubic is self dual") {
  CHECK(gram_equivalent(dual(named::simple_cubic(1.0)), named::simple_cubic(1.0), 1e-12));
}

TEST_CASE("dual of the dual is the lattice") {
  for (const auto& L : oracle::random_lattices(50, 17)) {
    const LatticeParams D = dual(L);
    CHECK(D.volume == doctest::Approx(1.0 / L.volume).epsilon(1e-12));
    CHECK(gram_equivalent(dual(D), L, 1e-10));
  }
}

TEST_CASE("form values") {
  auto f = form_values(1, 0, 0);
  CHECK(f.I == doctest::Approx(1.0 / c13));
  CHECK(f.R == 1.0);
  CHECK(f.T == 0.0);
  f = form_values(1, 1, -1);
  CHECK(f.R == 1.0);
  CHECK(f.T == 0.0);
  f = form_values(2, -1, 3);
  CHECK(f.I == doctest::Approx(14.0 / c13));
  CHECK(f.R == double(oracle::R(2, -1, 3)));
  CHECK(f.T == double(oracle::T(2, -1, 3)));
}

TEST_CASE("twelve nearest neighbours of R") {
  int count = 0;
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n)
      for (int p = -2; p <= 2; ++p) count += form_R(m, n, p) == 1;
  CHECK(count == 12);
}

TEST_CASE("4|T| <= R^2 and R > 0 off the origin") {
  for (long long m = -20; m <= 20; ++m)
    for (long long n = -20; n <= 20; ++n)
      for (long long p = -20; p <= 20; ++p) {
        const long long r = form_R(m, n, p), t = form_T(m, n, p);
        if (m || n || p) REQUIRE(r > 0);
        REQUIRE(4 * std::llabs(t) <= r * r);
      }
}

TEST_CASE("R is symmetric in m and n") {
  for (long long m = -6; m <= 6; ++m)
    for (long long n = -6; n <= 6; ++n)
      for (long long p = -6; p <= 6; ++p) CHECK(form_R(m, n, p) == form_R(n, m, p));
}

TEST_CASE("I is invariant under signed permutations") {
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      for (int p = -3; p <= 3; ++p) {
        const std::array<long, 3> k{m, n, p};
        const double I = form_values(m, n, p).I;
        for (const auto& P : perms)
          for (int s = 0; s < 8; ++s) {
            const long a = (s & 1 ? -1 : 1) * k[P[0]], b = (s & 2 ? -1 : 1) * k[P[1]], c = (s & 4 ? -1 : 1) * k[P[2]];
            CHECK(form_values(a, b, c).I == I);
          }
      }
}
