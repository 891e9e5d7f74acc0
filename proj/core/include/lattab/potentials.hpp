#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lattab {

// All potentials act on squared distances r = |p|^2.
struct Gaussian {
  double alpha;  // f(r) = exp(-alpha r)
};
struct InversePower {
  double s;  // f(r) = r^{-s}
};
struct LennardJones {
  double a1, a2, x1, x2;  // f(r) = a2 r^{-x2} - a1 r^{-x1}
};

// One building block of f^(j): coef * exp(-rate r) or coef * r^{-rate}.
struct KernelTerm {
  enum class Kind { Exponential, Power };
  Kind kind;
  double coef;
  double rate;

  double operator()(double r) const;
};

class Potential {
 public:
  using Variant = std::variant<Gaussian, InversePower, LennardJones>;

  explicit Potential(Variant v);
  static Potential gaussian(double alpha) { return Potential(Gaussian{alpha}); }
  static Potential inverse_power(double s) { return Potential(InversePower{s}); }
  static Potential lennard_jones(double a1, double a2, double x1, double x2) {
    return Potential(LennardJones{a1, a2, x1, x2});
  }

  // f, f', f'' at r > 0.
  double eval(double r, int order = 0) const;
  // Slowest algebraic decay rate of |f|; +inf for the Gaussian.
  double decay_exponent() const;
  // f^(order) as a sum of pure kernels.
  std::vector<KernelTerm> kernel_terms(int order) const;

  const Variant& variant() const { return v_; }
  // Round-trips through parse_potential.
  std::string spec() const;

 private:
  Variant v_;
};

// "gaussian:alpha=1.5", "power:s=3", "lj:a1=2,a2=1,x1=3,x2=6"
Potential parse_potential(std::string_view text);

}  // namespace lattab
