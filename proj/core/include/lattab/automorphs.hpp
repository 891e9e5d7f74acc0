#pragma once

#include <string>
#include <vector>

#include "lattab/polynomial.hpp"

namespace lattab {

// sum lhs(m,n,p) F(R) = sum rhs(m,n,p) F(R) over R-shells, for any F.
// The right-hand sides are combinations of R, R^2 and T.
struct AutomorphIdentity {
  int label;
  Polynomial3 lhs;
  Polynomial3 rhs;
  std::string text;
};

const std::vector<AutomorphIdentity>& automorph_identities();

// Both sides as R-shell sums with F(R) = exp(-beta R), R <= t_max.
// residual is absolute when the right side is identically zero, relative otherwise.
struct AutomorphCheck {
  int label;
  double lhs, rhs, residual;
  bool zero_valued;
};
AutomorphCheck check_automorph(const AutomorphIdentity& id, double beta, int t_max);

}  // namespace lattab
