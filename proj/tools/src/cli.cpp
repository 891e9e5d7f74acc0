#include "lattab/cli/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lattab/cli/json_out.hpp"
#include "lattab/errors.hpp"

namespace lattab::cli {

namespace {

// Input problems detected before any numerics run map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LatticeOpt {
  std::string spec = "named:d3";
  double volume = 1.0;
  CLI::Option* volume_opt = nullptr;
};

struct TolOpt {
  double tol = 0.0;
  std::string strategy = "gamma";
  CLI::Option* tol_opt = nullptr;
};

void add_lattice(CLI::App* app, LatticeOpt& o) {
  app->add_option("--lattice", o.spec, "named:z3 | named:d3 | named:d3star, or a JSON object {u,v,x,y,z,V}")
      ->capture_default_str();
  o.volume_opt = app->add_option("--volume", o.volume, "cell volume (overrides V of a JSON lattice)")
                     ->capture_default_str()
                     ->check(CLI::PositiveNumber);
}

void add_tol(CLI::App* app, TolOpt& o) {
  o.tol_opt = app->add_option("--tol", o.tol, "absolute target tolerance")->check(CLI::PositiveNumber);
  app->add_option("--strategy", o.strategy, "summation strategy")
      ->check(CLI::IsMember({"gamma", "direct", "rshell"}))
      ->capture_default_str();
}

LatticeParams resolve_lattice(const LatticeOpt& o) {
  std::string s = o.spec;
  if (s.rfind("named:", 0) == 0) s = s.substr(6);
  if (s == "z3") return named::simple_cubic(o.volume);
  if (s == "d3") return named::fcc(o.volume);
  if (s == "d3star") return named::bcc(o.volume);
  std::string text = o.spec;
  if (text.empty() || text.front() != '{') {
    std::ifstream f(text);
    if (!f) throw UsageError("--lattice: expected named:z3|d3|d3star, a JSON object or a JSON file, got '" + o.spec + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("--lattice: ") + e.what());
  }
  try {
    LatticeParams L = lattice_from_json(j);
    if (o.volume_opt && o.volume_opt->count()) L.volume = o.volume;
    return L;
  } catch (const Error& e) {
    throw UsageError(std::string("--lattice: ") + e.what());
  }
}

Potential resolve_potential(const std::string& text) {
  try {
    return parse_potential(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--pot: ") + e.what());
  }
}

SumConfig resolve_config(const TolOpt& o, std::optional<Potential> pot, double fallback_tol = 1e-12) {
  SumConfig cfg = pot ? SumConfig::defaults_for(*pot) : SumConfig{fallback_tol};
  if (o.tol_opt && o.tol_opt->count()) cfg.target_tol = o.tol;
  cfg.strategy = o.strategy == "direct"   ? SumStrategy::Direct
                 : o.strategy == "rshell" ? SumStrategy::RTruncated
                                          : SumStrategy::GammaAccelerated;
  return cfg;
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_command(const std::vector<std::string>& args) {
  std::string s = "lattab";
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  return s;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw UsageError("grid needs 0 < min <= max and at least one point");
  std::vector<double> g;
  for (int i = 0; i < n; ++i)
    g.push_back(n == 1 ? lo : lo * std::pow(hi / lo, double(i) / double(n - 1)));
  return g;
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_scan_csv(std::ostream& os, const ThetaScan& s) {
  os << "alpha,d3,d3star,beta,q_uu,q_xx,q_zz,det_uv,det_xy\n";
  for (const auto& r : s.rows)
    os << csv_number(r.alpha) << ',' << to_string(r.d3) << ',' << to_string(r.d3_dual) << ','
       << csv_number(r.signs.beta) << ',' << csv_number(r.signs.q_uu) << ',' << csv_number(r.signs.q_xx) << ','
       << csv_number(r.signs.q_zz) << ',' << csv_number(r.signs.det_uv) << ',' << csv_number(r.signs.det_xy)
       << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice energies, derivatives and stability of cubic Bravais lattices", "lattab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LATTAB_VERSION);

  // What the selected command computes; filled in by the parsed branch.
  std::function<Json()> action;
  std::optional<SumConfig> used_config;
  std::string csv_path;
  std::function<void(std::ostream&)> csv_writer;

  // lattice
  LatticeOpt lat_lattice;
  auto* lattice_cmd = app.add_subcommand("lattice", "parameters, basis, Gram matrix and dual of a lattice");
  add_lattice(lattice_cmd, lat_lattice);

  // calc
  auto* calc = app.add_subcommand("calc", "energy and its derivatives in (u,v,x,y,z)");
  calc->require_subcommand(1);
  std::string calc_pot;
  std::array<LatticeOpt, 3> calc_lattice;
  std::array<TolOpt, 3> calc_tol;
  std::array<CLI::App*, 3> calc_cmds{};
  const std::array<const char*, 3> calc_names{"energy", "grad", "hessian"};
  for (std::size_t i = 0; i < 3; ++i) {
    auto* c = calc->add_subcommand(calc_names[i], std::string(calc_names[i]) + " at the given lattice");
    c->add_option("--pot", calc_pot, "gaussian:alpha=A | power:s=S | lj:a1=..,a2=..,x1=..,x2=..")->required();
    add_lattice(c, calc_lattice[i]);
    add_tol(c, calc_tol[i]);
    calc_cmds[i] = c;
  }

  // special
  auto* special = app.add_subcommand("special", "one-dimensional theta, Epstein zeta and the FCC series");
  special->require_subcommand(1);
  double th_s = 1.0;
  auto* theta3_cmd = special->add_subcommand("theta3", "theta_3(s) and its first two derivatives");
  theta3_cmd->add_option("--s", th_s, "argument")->required()->check(CLI::PositiveNumber);
  double zeta_two_s = 0.0;
  std::string zeta_backend = "gamma";
  LatticeOpt zeta_lattice;
  TolOpt zeta_tol;
  auto* zeta_cmd = special->add_subcommand("zeta", "Epstein zeta function zeta_L(2s)");
  zeta_cmd->add_option("--two-s", zeta_two_s, "the exponent 2s")->required();
  zeta_cmd->add_option("--backend", zeta_backend)->check(CLI::IsMember({"gamma", "direct"}))->capture_default_str();
  add_lattice(zeta_cmd, zeta_lattice);
  zeta_cmd->add_option("--tol", zeta_tol.tol, "absolute target tolerance")->check(CLI::PositiveNumber);
  double ghy_s = 0.0;
  double ghy_tol = 1e-12;
  auto* ghy_cmd = special->add_subcommand("ghy", "G(s), H(s), Y(s) and zeta of the unit FCC form");
  ghy_cmd->add_option("--s", ghy_s)->required();
  ghy_cmd->add_option("--tol", ghy_tol)->check(CLI::PositiveNumber)->capture_default_str();

  // stability
  auto* stability = app.add_subcommand("stability", "critical point classification and thresholds");
  stability->require_subcommand(1);
  std::string st_pot;
  LatticeOpt st_lattice;
  TolOpt st_tol;
  auto* classify_cmd = stability->add_subcommand("classify", "classify a critical point from its Hessian");
  classify_cmd->add_option("--pot", st_pot)->required();
  add_lattice(classify_cmd, st_lattice);
  add_tol(classify_cmd, st_tol);
  std::string z3_pot, fcc_pot;
  TolOpt z3_tol, fcc_tol;
  auto* z3_cmd = stability->add_subcommand("lj-z3-thresholds", "volumes V1..V4 for Lennard-Jones at Z^3");
  z3_cmd->add_option("--pot", z3_pot, "lj:a1=..,a2=..,x1=..,x2=..")->required();
  z3_cmd->add_option("--tol", z3_tol.tol)->check(CLI::PositiveNumber);
  auto* fcc_cmd = stability->add_subcommand("lj-fcc-thresholds", "v_lo and v_hi for Lennard-Jones at FCC");
  fcc_cmd->add_option("--pot", fcc_pot, "lj:a1=..,a2=..,x1=..,x2=..")->required();
  fcc_cmd->add_option("--tol", fcc_tol.tol)->check(CLI::PositiveNumber);
  double scan_volume = 1.0, scan_min = 0.05, scan_max = 15.0;
  int scan_points = 60;
  TolOpt scan_tol;
  auto* scan_cmd = stability->add_subcommand("theta-scan", "classify FCC and BCC over a log grid of alpha");
  scan_cmd->add_option("--volume", scan_volume)->check(CLI::PositiveNumber)->capture_default_str();
  scan_cmd->add_option("--alpha-min", scan_min)->check(CLI::PositiveNumber)->capture_default_str();
  scan_cmd->add_option("--alpha-max", scan_max)->check(CLI::PositiveNumber)->capture_default_str();
  scan_cmd->add_option("--points", scan_points)->check(CLI::Range(1, 100000))->capture_default_str();
  scan_cmd->add_option("--csv", csv_path, "also write one CSV row per grid point ('-' for stdout instead of JSON)");
  scan_cmd->add_option("--tol", scan_tol.tol)->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "numerical identity checks");
  verify->require_subcommand(1);
  double aut_beta = 1.0;
  int aut_tmax = 40;
  auto* aut_cmd = verify->add_subcommand("automorphs", "the 19 automorph identities on R-shell sums");
  aut_cmd->add_option("--beta", aut_beta)->check(CLI::PositiveNumber)->capture_default_str();
  aut_cmd->add_option("--tmax", aut_tmax)->check(CLI::Range(1, 400))->capture_default_str();
  int fs1_points = 20;
  double fs1_min = 0.1, fs1_max = 10.0;
  auto* fs1_cmd = verify->add_subcommand("fs1", "theta_3 functional identity and refined log-convexity");
  fs1_cmd->add_option("--points", fs1_points)->check(CLI::Range(1, 100000))->capture_default_str();
  fs1_cmd->add_option("--s-min", fs1_min)->check(CLI::PositiveNumber)->capture_default_str();
  fs1_cmd->add_option("--s-max", fs1_max)->check(CLI::PositiveNumber)->capture_default_str();
  LatticeOpt poi_lattice;
  double poi_alpha = 1.0;
  auto* poi_cmd = verify->add_subcommand("poisson", "theta_L(alpha) against its dual-lattice transform");
  add_lattice(poi_cmd, poi_lattice);
  poi_cmd->add_option("--alpha", poi_alpha)->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (lattice_cmd->parsed()) {
      const LatticeParams L = resolve_lattice(lat_lattice);
      action = [L] {
        const Basis3 b = basis(L);
        auto mat = [](const Eigen::Matrix3d& M) {
          Json rows = Json::array();
          for (int i = 0; i < 3; ++i) rows.push_back(Json{M(i, 0), M(i, 1), M(i, 2)});
          return rows;
        };
        Json vecs = Json::array();
        for (const auto* v : {&b.v1, &b.v2, &b.v3}) vecs.push_back(Json{(*v)[0], (*v)[1], (*v)[2]});
        return Json{{"lattice", to_json(L)},
                    {"C", L.c()},
                    {"basis", vecs},
                    {"determinant", b.determinant()},
                    {"gram", mat(gram_matrix(L))},
                    {"dual", to_json(dual(L))}};
      };
    }
    for (std::size_t i = 0; i < 3; ++i) {
      auto* c = calc_cmds[i];
      if (!c->parsed()) continue;
      const Potential pot = resolve_potential(calc_pot);
      const LatticeParams L = resolve_lattice(calc_lattice[i]);
      const SumConfig cfg = resolve_config(calc_tol[i], pot);
      used_config = cfg;
      const std::string name = c->get_name();
      action = [pot, L, cfg, name] {
        Json j{{"potential", pot.spec()}, {"lattice", to_json(L)}};
        if (name == "energy") j["energy"] = to_json(energy(pot, L, cfg));
        if (name == "grad") j.update(to_json(gradient(pot, L, cfg)));
        if (name == "hessian") j["hessian"] = to_json(hessian(pot, L, cfg));
        return j;
      };
    }
    if (theta3_cmd->parsed()) {
      action = [th_s] {
        const auto t = theta3_all(th_s);
        return Json{{"s", t.s}, {"theta3", t.th}, {"theta3_d1", t.th1}, {"theta3_d2", t.th2},
                    {"fs1", fs1_value(th_s)}};
      };
    }
    if (zeta_cmd->parsed()) {
      const LatticeParams L = resolve_lattice(zeta_lattice);
      SumConfig cfg{1e-10};
      if (zeta_cmd->get_option("--tol")->count()) cfg.target_tol = zeta_tol.tol;
      const ZetaBackend backend = zeta_backend == "direct" ? ZetaBackend::Direct : ZetaBackend::GammaAccelerated;
      cfg.strategy = backend == ZetaBackend::Direct ? SumStrategy::Direct : SumStrategy::GammaAccelerated;
      used_config = cfg;
      action = [L, cfg, backend, two_s = zeta_two_s, name = zeta_backend] {
        return Json{{"lattice", to_json(L)},
                    {"two_s", two_s},
                    {"backend", name},
                    {"zeta", to_json(epstein_zeta(L, two_s, backend, cfg))}};
      };
    }
    if (ghy_cmd->parsed()) {
      const SumConfig cfg{ghy_tol};
      used_config = cfg;
      action = [s = ghy_s, cfg] {
        return Json{{"s", s},
                    {"G", g_function(s, cfg)},
                    {"H", h_function(s, cfg)},
                    {"Y", y_function(s, cfg)},
                    {"zeta_R", zeta_fcc(s, cfg)}};
      };
    }
    if (classify_cmd->parsed()) {
      const Potential pot = resolve_potential(st_pot);
      const LatticeParams L = resolve_lattice(st_lattice);
      const SumConfig cfg = resolve_config(st_tol, pot);
      used_config = cfg;
      action = [pot, L, cfg] { return to_json(classify(pot, L, cfg)); };
    }
    auto require_lj = [](const Potential& p) {
      if (!std::holds_alternative<LennardJones>(p.variant()))
        throw UsageError("--pot: a Lennard-Jones potential (lj:...) is required");
      return std::get<LennardJones>(p.variant());
    };
    if (z3_cmd->parsed()) {
      const LennardJones lj = require_lj(resolve_potential(z3_pot));
      const SumConfig cfg{z3_cmd->get_option("--tol")->count() ? z3_tol.tol : 1e-13};
      used_config = cfg;
      action = [lj, cfg] {
        const auto ts = lj_z3_thresholds(lj, ScanWindow{}, cfg);
        Json j = Json::object();
        Json details = Json::array();
        for (const auto& t : ts) {
          j[t.name] = t.value;
          details.push_back(to_json(t));
        }
        j["thresholds"] = details;
        j["scan_window"] = {0.5, 3.0};
        return j;
      };
    }
    if (fcc_cmd->parsed()) {
      const LennardJones lj = require_lj(resolve_potential(fcc_pot));
      const SumConfig cfg{fcc_cmd->get_option("--tol")->count() ? fcc_tol.tol : 1e-12};
      used_config = cfg;
      action = [lj, cfg] { return to_json(lj_fcc_thresholds(lj, cfg)); };
    }
    if (scan_cmd->parsed()) {
      const auto grid = log_grid(scan_min, scan_max, scan_points);
      const SumConfig cfg{scan_cmd->get_option("--tol")->count() ? scan_tol.tol : 1e-12};
      used_config = cfg;
      auto result = std::make_shared<ThetaScan>();
      action = [grid, cfg, V = scan_volume, result] {
        *result = theta_alpha_scan(V, grid, cfg);
        return to_json(*result);
      };
      if (!csv_path.empty()) csv_writer = [result](std::ostream& os) { write_scan_csv(os, *result); };
    }
    if (aut_cmd->parsed()) {
      action = [beta = aut_beta, tmax = aut_tmax] {
        Json list = Json::array();
        double worst_rel = 0.0, worst_abs = 0.0;
        for (const auto& id : automorph_identities()) {
          const auto c = check_automorph(id, beta, tmax);
          Json j = to_json(c);
          j["identity"] = id.text;
          list.push_back(j);
          double& worst = c.zero_valued ? worst_abs : worst_rel;
          worst = std::max(worst, c.residual);
        }
        return Json{{"beta", beta},
                    {"t_max", tmax},
                    {"identities", list},
                    {"max_relative_residual", worst_rel},
                    {"max_absolute_residual", worst_abs},
                    {"pass", worst_rel < 1e-10 && worst_abs < 1e-12}};
      };
    }
    if (fs1_cmd->parsed()) {
      const auto grid = log_grid(fs1_min, fs1_max, fs1_points);
      action = [grid] {
        Json rows = Json::array();
        bool ok = true;
        for (double s : grid) {
          const auto t = theta3_all(s);
          const double res = std::fabs(fs1_value(s) + 0.5);
          const double convex = t.th2 * t.th - t.th1 * t.th1;
          const double bound = -t.th1 * t.th / s;
          const bool strict = convex > bound && bound > 0.0;
          ok = ok && res < 1e-12 && strict;
          rows.push_back(Json{{"s", s}, {"fs1_residual", res}, {"log_convexity", convex},
                              {"bound", bound}, {"strict", strict}});
        }
        return Json{{"rows", rows}, {"pass", ok}};
      };
    }
    if (poi_cmd->parsed()) {
      const LatticeParams L = resolve_lattice(poi_lattice);
      action = [L, a = poi_alpha] {
        return Json{{"lattice", to_json(L)}, {"alpha", a}, {"residual", poisson_theta_residual(L, a)}};
      };
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Json manifest{{"command", join_command(args)},
                {"config", used_config ? to_json(*used_config) : Json(nullptr)},
                {"versions", {{"lattab", LATTAB_VERSION}, {"output_format", "1"}}},
                {"timestamp", utc_timestamp()}};
  try {
    Json result = action();
    if (csv_writer && csv_path == "-") {
      csv_writer(out);
      return kExitOk;
    }
    if (csv_writer) {
      std::ofstream f(csv_path);
      if (!f) {
        err << "error: cannot write " << csv_path << '\n';
        return kExitNumeric;
      }
      csv_writer(f);
      result["csv"] = csv_path;
    }
    out << dump17(Json{{"manifest", manifest}, {"result", result}}) << '\n';
    return kExitOk;
  } catch (const SumError& e) {
    out << dump17(Json{{"manifest", manifest},
                       {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}, {"partial", to_json(e.partial())}}}})
        << '\n';
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    out << dump17(Json{{"manifest", manifest}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}})
        << '\n';
    err << "error: " << e.what() << '\n';
  }
  return kExitNumeric;
}

}  // namespace lattab::cli
