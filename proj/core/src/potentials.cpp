#include "lattab/potentials.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "lattab/errors.hpp"

namespace lattab {

double KernelTerm::operator()(double r) const {
  return kind == Kind::Exponential ? coef * std::exp(-rate * r) : coef * std::pow(r, -rate);
}

namespace {

// d^j/dr^j r^{-s} = (-1)^j s (s+1) ... (s+j-1) r^{-s-j}
KernelTerm power_derivative(double s, int j, double scale) {
  double c = scale;
  for (int i = 0; i < j; ++i) c *= -(s + i);
  return {KernelTerm::Kind::Power, c, s + j};
}

bool positive(double a) { return std::isfinite(a) && a > 0.0; }

}  // namespace

Potential::Potential(Variant v) : v_(v) {
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Gaussian>) {
          if (!positive(p.alpha)) throw Error(ErrorKind::InvalidParameter, "gaussian needs alpha > 0");
        } else if constexpr (std::is_same_v<P, InversePower>) {
          if (!positive(p.s)) throw Error(ErrorKind::InvalidParameter, "power needs s > 0");
        } else {
          if (!positive(p.a1) || !positive(p.a2))
            throw Error(ErrorKind::InvalidParameter, "lj needs a1, a2 > 0");
          if (!positive(p.x1) || !std::isfinite(p.x2) || !(p.x1 < p.x2))
            throw Error(ErrorKind::InvalidParameter, "lj needs 0 < x1 < x2");
        }
      },
      v_);
}

double Potential::eval(double r, int order) const {
  if (!(r > 0.0)) throw Error(ErrorKind::NonPositiveArgument, "potential evaluated at r <= 0");
  if (order < 0 || order > 2) throw Error(ErrorKind::InvalidParameter, "order must be 0, 1 or 2");
  double s = 0.0;
  for (const auto& k : kernel_terms(order)) s += k(r);
  return s;
}

double Potential::decay_exponent() const {
  return std::visit(
      [](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Gaussian>)
          return std::numeric_limits<double>::infinity();
        else if constexpr (std::is_same_v<P, InversePower>)
          return p.s;
        else
          return p.x1;
      },
      v_);
}

std::vector<KernelTerm> Potential::kernel_terms(int order) const {
  return std::visit(
      [order](const auto& p) -> std::vector<KernelTerm> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Gaussian>) {
          return {{KernelTerm::Kind::Exponential, std::pow(-p.alpha, order), p.alpha}};
        } else if constexpr (std::is_same_v<P, InversePower>) {
          return {power_derivative(p.s, order, 1.0)};
        } else {
          return {power_derivative(p.x2, order, p.a2), power_derivative(p.x1, order, -p.a1)};
        }
      },
      v_);
}

std::string Potential::spec() const {
  char buf[256];
  std::visit(
      [&buf](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Gaussian>)
          std::snprintf(buf, sizeof buf, "gaussian:alpha=%.17g", p.alpha);
        else if constexpr (std::is_same_v<P, InversePower>)
          std::snprintf(buf, sizeof buf, "power:s=%.17g", p.s);
        else
          std::snprintf(buf, sizeof buf, "lj:a1=%.17g,a2=%.17g,x1=%.17g,x2=%.17g", p.a1, p.a2,
                        p.x1, p.x2);
      },
      v_);
  return buf;
}

Potential parse_potential(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::InvalidParameter, "potential spec needs 'family:key=value,...'");
  const std::string family(text.substr(0, colon));
  std::map<std::string, double> kv;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::InvalidParameter, "bad potential parameter '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string val(item.substr(eq + 1));
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty())
      throw Error(ErrorKind::InvalidParameter, "bad number '" + val + "'");
    if (!kv.emplace(key, d).second)
      throw Error(ErrorKind::InvalidParameter, "duplicate key '" + key + "'");
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorKind::InvalidParameter, std::string("missing '") + key + "'");
    double d = it->second;
    kv.erase(it);
    return d;
  };
  auto finish = [&](Potential p) {
    if (!kv.empty()) throw Error(ErrorKind::InvalidParameter, "unknown key '" + kv.begin()->first + "'");
    return p;
  };
  if (family == "gaussian") return finish(Potential::gaussian(take("alpha")));
  if (family == "power") return finish(Potential::inverse_power(take("s")));
  if (family == "lj") {
    const double a1 = take("a1"), a2 = take("a2"), x1 = take("x1"), x2 = take("x2");
    return finish(Potential::lennard_jones(a1, a2, x1, x2));
  }
  throw Error(ErrorKind::InvalidParameter, "unknown potential family '" + family + "'");
}

}  // namespace lattab
