#include "lattab/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "lattab/errors.hpp"

namespace lattab {

void Polynomial3::rebuild(const std::map<Exponents, double>& coeffs) {
  terms_.clear();
  for (const auto& [e, c] : coeffs)
    if (c != 0.0) terms_.push_back({e, c});
}

std::map<Exponents, double> Polynomial3::as_map() const {
  std::map<Exponents, double> out;
  for (const auto& t : terms_) out[t.exp] = t.coef;
  return out;
}

Polynomial3 Polynomial3::constant(double c) { return monomial(c, 0, 0, 0); }

Polynomial3 Polynomial3::monomial(double c, int a, int b, int d) {
  if (a < 0 || b < 0 || d < 0 || a > 16 || b > 16 || d > 16)
    throw Error(ErrorKind::InvalidParameter, "monomial exponent out of range");
  Polynomial3 P;
  if (c != 0.0) P.terms_.push_back({{a, b, d}, c});
  return P;
}

Polynomial3 Polynomial3::var(int axis) {
  Exponents e{0, 0, 0};
  e.at(axis) = 1;
  return monomial(1.0, e[0], e[1], e[2]);
}

Polynomial3& Polynomial3::operator+=(const Polynomial3& o) {
  auto m = as_map();
  for (const auto& t : o.terms_) m[t.exp] += t.coef;
  rebuild(m);
  return *this;
}

Polynomial3& Polynomial3::operator-=(const Polynomial3& o) {
  auto m = as_map();
  for (const auto& t : o.terms_) m[t.exp] -= t.coef;
  rebuild(m);
  return *this;
}

Polynomial3& Polynomial3::operator*=(double s) {
  auto m = as_map();
  for (auto& [e, c] : m) c *= s;
  rebuild(m);
  return *this;
}

Polynomial3 operator*(const Polynomial3& a, const Polynomial3& b) {
  std::map<Exponents, double> m;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Exponents e{x.exp[0] + y.exp[0], x.exp[1] + y.exp[1], x.exp[2] + y.exp[2]};
      if (e[0] > 16 || e[1] > 16 || e[2] > 16)
        throw Error(ErrorKind::InvalidParameter, "polynomial degree too large");
      m[e] += x.coef * y.coef;
    }
  Polynomial3 P;
  P.rebuild(m);
  return P;
}

double Polynomial3::operator()(double m, double n, double p) const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.coef * std::pow(m, t.exp[0]) * std::pow(n, t.exp[1]) * std::pow(p, t.exp[2]);
  return s;
}

int Polynomial3::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

double Polynomial3::constant_term() const {
  for (const auto& t : terms_)
    if (t.degree() == 0) return t.coef;
  return 0.0;
}

double Polynomial3::magnitude(double k) const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::fabs(t.coef) * std::pow(k, t.degree());
  return s;
}

Polynomial3 Polynomial3::substitute(const Eigen::Matrix3d& M) const {
  std::array<Polynomial3, 3> lin;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      lin[i] += Polynomial3::monomial(M(i, j), j == 0, j == 1, j == 2);
  Polynomial3 out;
  for (const auto& t : terms_) {
    Polynomial3 term = Polynomial3::constant(t.coef);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < t.exp[i]; ++k) term = term * lin[i];
    out += term;
  }
  return out;
}

Polynomial3 Polynomial3::permuted(const std::array<int, 3>& perm) const {
  std::map<Exponents, double> m;
  for (const auto& t : terms_) {
    Exponents e{0, 0, 0};
    for (int i = 0; i < 3; ++i) e[perm[i]] += t.exp[i];
    m[e] += t.coef;
  }
  Polynomial3 P;
  P.rebuild(m);
  return P;
}

std::string Polynomial3::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  const char* names = "mnp";
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coef;
    for (int i = 0; i < 3; ++i)
      if (t.exp[i] > 0) {
        os << '*' << names[i];
        if (t.exp[i] > 1) os << '^' << t.exp[i];
      }
  }
  return os.str();
}

void PowerTable::set(double m, double n, double p) {
  const double v[3] = {m, n, p};
  for (int i = 0; i < 3; ++i) {
    pw_[i][0] = 1.0;
    for (int k = 1; k <= max_degree_; ++k) pw_[i][k] = pw_[i][k - 1] * v[i];
  }
}

double PowerTable::eval(const Polynomial3& P) const {
  double s = 0.0;
  for (const auto& t : P.terms())
    s += t.coef * pw_[0][t.exp[0]] * pw_[1][t.exp[1]] * pw_[2][t.exp[2]];
  return s;
}

namespace forms {

Polynomial3 sum_of_squares() {
  return Polynomial3::monomial(1, 2, 0, 0) + Polynomial3::monomial(1, 0, 2, 0) +
         Polynomial3::monomial(1, 0, 0, 2);
}

Polynomial3 R() {
  return sum_of_squares() + Polynomial3::monomial(1, 1, 0, 1) + Polynomial3::monomial(1, 0, 1, 1);
}

Polynomial3 T() {
  const auto m = Polynomial3::var(0), n = Polynomial3::var(1), p = Polynomial3::var(2);
  return m * n * (m + p) * (n + p);
}

}  // namespace forms

}  // namespace lattab
