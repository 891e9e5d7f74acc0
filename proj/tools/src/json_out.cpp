#include "lattab/cli/json_out.hpp"

#include <cmath>
#include <cstdio>

#include "lattab/errors.hpp"

namespace lattab::cli {

namespace {

void write(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(std::size_t(indent * (depth + 1)), ' ') : "";
  const std::string pad_end = indent > 0 ? std::string(std::size_t(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += pad_end;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      // Flat numeric rows stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && e.is_primitive();
      if (j.empty() || flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        write(j[i], out, indent, depth + 1);
      }
      out += nl;
      out += pad_end;
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::string out;
  write(j, out, indent, 0);
  return out;
}

Json to_json(const LatticeParams& L) {
  return Json{{"u", L.u}, {"v", L.v}, {"x", L.x}, {"y", L.y}, {"z", L.z}, {"V", L.volume}};
}

LatticeParams lattice_from_json(const Json& j) {
  LatticeParams L;
  try {
    L.u = j.at("u").get<double>();
    L.v = j.at("v").get<double>();
    L.x = j.value("x", 0.0);
    L.y = j.value("y", 0.0);
    L.z = j.value("z", 0.0);
    L.volume = j.value("V", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParameter, std::string("bad lattice object: ") + e.what());
  }
  L.validate();
  return L;
}

Json to_json(const SumResult& r) {
  return Json{{"value", r.value}, {"est_error", r.est_error}, {"points_used", r.points_used},
              {"converged", r.converged}};
}

Json to_json(const SumConfig& c) {
  const char* strategy = c.strategy == SumStrategy::Direct       ? "direct"
                         : c.strategy == SumStrategy::RTruncated ? "rshell"
                                                                 : "gamma";
  Json j{{"target_tol", c.target_tol}, {"strategy", strategy}, {"max_points", c.max_points}};
  if (c.strategy == SumStrategy::Direct) j["cutoff_growth"] = c.cutoff_growth;
  if (c.strategy == SumStrategy::RTruncated) j["t_max"] = c.t_max;
  if (c.strategy == SumStrategy::GammaAccelerated) j["split_scale"] = c.split_scale;
  return j;
}

Json to_json(const Gradient5& g) {
  Json j = Json::object();
  for (int i = 0; i < 5; ++i) j[kModulusNames[i]] = g.d[i];
  return Json{{"gradient", j}, {"norm_inf", g.norm_inf()}, {"est_error", g.est_error}};
}

Json to_json(const Hessian5& h) {
  Json rows = Json::array();
  for (int i = 0; i < 5; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 5; ++k) row.push_back(h.m(i, k));
    rows.push_back(row);
  }
  return Json{{"labels", Json(kModulusNames)}, {"matrix", rows}, {"est_error", h.est_error}};
}

Json to_json(const StabilityReport& r) {
  return Json{{"lattice", to_json(r.lattice)},
              {"potential", r.potential.spec()},
              {"classification", to_string(r.classification)},
              {"eigenvalues", Json(r.eigenvalues)},
              {"energy", r.energy},
              {"gradient_norm", r.gradient_norm},
              {"tolerances", {{"grad_tol", r.grad_tol}, {"eig_tol", r.eig_tol}}},
              {"hessian", to_json(r.hessian)},
              {"config", to_json(r.config)}};
}

Json to_json(const ThresholdResult& t) {
  return Json{{"name", t.name},           {"value", t.value},
              {"bracket", {t.lo, t.hi}},  {"residual", t.residual},
              {"criterion", t.criterion}, {"sign_changes", t.sign_changes}};
}

Json to_json(const FccThresholds& t) {
  return Json{{"v_lo", t.v_lo}, {"v_hi", t.v_hi}, {"v_G", t.v_g}, {"v_H", t.v_h},
              {"G_x1", t.g1},   {"G_x2", t.g2},   {"H_x1", t.h1}, {"H_x2", t.h2}};
}

Json to_json(const SignQuantities& q) {
  return Json{{"beta", q.beta},     {"q_uu", q.q_uu},     {"q_xx", q.q_xx},
              {"q_zz", q.q_zz},     {"det_uv", q.det_uv}, {"det_xy", q.det_xy},
              {"source", q.from_hessian ? "hessian" : "scalars"}};
}

Json to_json(const ThetaScan& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows)
    rows.push_back(Json{{"alpha", r.alpha},
                        {"d3", to_string(r.d3)},
                        {"d3star", to_string(r.d3_dual)},
                        {"signs", to_json(r.signs)}});
  auto transitions = [](const std::vector<ThetaTransition>& ts) {
    Json a = Json::array();
    for (const auto& t : ts)
      a.push_back(Json{{"alpha", t.alpha}, {"bracket", {t.lo, t.hi}}, {"from", to_string(t.from)},
                       {"to", to_string(t.to)}});
    return a;
  };
  return Json{{"volume", s.volume},
              {"rows", rows},
              {"d3_transitions", transitions(s.d3_transitions)},
              {"d3star_transitions", transitions(s.d3_dual_transitions)},
              {"alpha0_estimate", s.alpha0},
              {"alpha1_estimate", s.alpha1},
              {"estimates_are", "DERIVED"},
              {"ambiguous", s.ambiguous}};
}

Json to_json(const AutomorphCheck& c) {
  return Json{{"label", c.label},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"residual", c.residual},
              {"residual_kind", c.zero_valued ? "absolute" : "relative"}};
}

}  // namespace lattab::cli
