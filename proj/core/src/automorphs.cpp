#include "lattab/automorphs.hpp"

#include <cmath>

#include "lattab/sums.hpp"

namespace lattab {

const std::vector<AutomorphIdentity>& automorph_identities() {
  static const std::vector<AutomorphIdentity> ids = [] {
    const auto m = Polynomial3::var(0), n = Polynomial3::var(1), p = Polynomial3::var(2);
    const auto R = forms::R(), T = forms::T();
    const auto R2 = R * R;
    const auto A = 4.0 * n * n + 4.0 * n * p - p * p;
    const auto two_m_p = 2.0 * m + p;
    const auto two_n_p = 2.0 * n + p;
    const Polynomial3 zero;
    return std::vector<AutomorphIdentity>{
        {1, A, zero, "(4n^2+4np-p^2) = 0"},
        {2, n * two_m_p, zero, "n(2m+p) = 0"},
        {3, p * two_m_p, zero, "p(2m+p) = 0"},
        {4, p * two_n_p, zero, "p(2n+p) = 0"},
        {5, p * p, (2.0 / 3.0) * R, "p^2 = (2/3) R"},
        {6, A * A, (10.0 / 3.0) * R2 + (56.0 / 3.0) * T, "(4n^2+4np-p^2)^2 = (10/3) R^2 + (56/3) T"},
        {7, n * n, 0.5 * R, "n^2 = (1/2) R"},
        {8, n * n * two_m_p * two_m_p, (1.0 / 3.0) * R2 + (4.0 / 3.0) * T, "n^2(2m+p)^2 = (1/3) R^2 + (4/3) T"},
        {9, p * p * two_m_p * two_m_p, (2.0 / 3.0) * R2 - (8.0 / 3.0) * T, "p^2(2m+p)^2 = (2/3) R^2 - (8/3) T"},
        {10, p * p * two_n_p * two_n_p, (2.0 / 3.0) * R2 - (8.0 / 3.0) * T, "p^2(2n+p)^2 = (2/3) R^2 - (8/3) T"},
        {11, n * two_m_p * A, zero, "n(2m+p)(4n^2+4np-p^2) = 0"},
        {12, p * two_m_p * A, zero, "p(2m+p)(4n^2+4np-p^2) = 0"},
        {13, p * two_n_p * A, zero, "p(2n+p)(4n^2+4np-p^2) = 0"},
        {14, n * p, (-1.0 / 3.0) * R, "np = -(1/3) R"},
        {15, n * p * two_m_p * two_m_p, (-1.0 / 3.0) * R2 + (4.0 / 3.0) * T, "np(2m+p)^2 = -(1/3) R^2 + (4/3) T"},
        {16, n * p * two_m_p * two_n_p, zero, "np(2m+p)(2n+p) = 0"},
        {17, p * p * two_m_p * two_n_p, zero, "p^2(2m+p)(2n+p) = 0"},
        {18, p * p * p * p, (2.0 / 3.0) * R2 + (8.0 / 3.0) * T, "p^4 = (2/3) R^2 + (8/3) T"},
        {19, p * p * A, (-2.0 / 3.0) * R2 - 8.0 * T, "p^2(4n^2+4np-p^2) = -(2/3) R^2 - 8 T"},
    };
  }();
  return ids;
}

AutomorphCheck check_automorph(const AutomorphIdentity& id, double beta, int t_max) {
  const std::vector<Polynomial3> w{id.lhs, id.rhs};
  const auto v = r_shell_sums([beta](double r) { return std::exp(-beta * r); }, w, t_max);
  AutomorphCheck c{id.label, v[0], v[1], 0.0, id.rhs.is_zero()};
  c.residual = c.zero_valued ? std::fabs(c.lhs) : std::fabs(c.lhs - c.rhs) / std::fabs(c.rhs);
  return c;
}

}  // namespace lattab
