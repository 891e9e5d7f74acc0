#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lattab {

// Exponents of m, n, p.
using Exponents = std::array<int, 3>;

struct Monomial {
  Exponents exp;
  double coef;
  int degree() const { return exp[0] + exp[1] + exp[2]; }
};

// Real polynomial in three variables. Used for the weights of lattice sums
// (variables are the integer coordinates m, n, p).
class Polynomial3 {
 public:
  Polynomial3() = default;

  static Polynomial3 constant(double c);
  static Polynomial3 monomial(double c, int a, int b, int d);
  static Polynomial3 var(int axis);  // 0 -> m, 1 -> n, 2 -> p

  Polynomial3& operator+=(const Polynomial3& o);
  Polynomial3& operator-=(const Polynomial3& o);
  Polynomial3& operator*=(double s);
  friend Polynomial3 operator+(Polynomial3 a, const Polynomial3& b) { return a += b; }
  friend Polynomial3 operator-(Polynomial3 a, const Polynomial3& b) { return a -= b; }
  friend Polynomial3 operator-(Polynomial3 a) { return a *= -1.0; }
  friend Polynomial3 operator*(Polynomial3 a, double s) { return a *= s; }
  friend Polynomial3 operator*(double s, Polynomial3 a) { return a *= s; }
  friend Polynomial3 operator*(const Polynomial3& a, const Polynomial3& b);

  double operator()(double m, double n, double p) const;

  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  double constant_term() const;
  // Sum of |c| * k^|alpha| over monomials, a crude bound on |P| at coordinates of size <= k.
  double magnitude(double k) const;

  // P(M y) as a polynomial in y.
  Polynomial3 substitute(const Eigen::Matrix3d& M) const;
  // Swap the roles of variables according to perm: result(m0,m1,m2) = P(m_perm[0], m_perm[1], m_perm[2]).
  Polynomial3 permuted(const std::array<int, 3>& perm) const;

  // Deterministic order (lexicographic in exponents).
  const std::vector<Monomial>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  void rebuild(const std::map<Exponents, double>& coeffs);
  std::map<Exponents, double> as_map() const;

  std::vector<Monomial> terms_;
};

// Evaluates several polynomials at one lattice point sharing the power tables.
class PowerTable {
 public:
  explicit PowerTable(int max_degree) : max_degree_(max_degree) {}
  void set(double m, double n, double p);
  double eval(const Polynomial3& P) const;

 private:
  int max_degree_;
  std::array<std::array<double, 17>, 3> pw_{};
};

namespace forms {
// I without the 2^{-1/3} factor: m^2 + n^2 + p^2.
Polynomial3 sum_of_squares();
Polynomial3 R();
Polynomial3 T();
}  // namespace forms

}  // namespace lattab
