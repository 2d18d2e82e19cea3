#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "bartnik/assembler.hpp"
#include "bartnik/error.hpp"
#include "bartnik/io.hpp"
#include "bartnik/mass_bounds.hpp"
#include "bartnik/parallel.hpp"
#include "bartnik/reduction.hpp"
#include "bartnik/version.hpp"

namespace fs = std::filesystem;
using bartnik::io::json;

namespace {

int g_log_level = 1;  // 0 quiet, 1 info, 2 debug

void log_info(const std::string& msg) {
  if (g_log_level >= 1) std::fprintf(stderr, "[bartnik] %s\n", msg.c_str());
}

struct CommonInputs {
  bartnik::BartnikData data;
  bartnik::PathDescriptor path = bartnik::PathDescriptor::make_direct(0.0,
                                                                      1.0);
  bool has_path = false;
};

CommonInputs parse_common(const json& cfg, bool need_path) {
  CommonInputs in;
  if (!cfg.contains("data")) {
    throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                         "config needs a \"data\" object");
  }
  in.data = bartnik::io::parse_data(cfg["data"]);
  if (cfg.contains("path")) {
    in.path = bartnik::io::parse_path(cfg["path"]);
    in.has_path = true;
  } else if (need_path) {
    throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                         "config needs a \"path\" object");
  }
  return in;
}

double working_hi(const bartnik::BartnikData& d) { return 20.0 * d.r_o; }

// ---- validate --------------------------------------------------------------

int cmd_validate(const json& cfg, const std::string& out_dir, bool /*plots*/) {
  bartnik::io::require_keys(
      cfg, {"spec", "data", "path", "profile", "cmc", "Rmin"}, "config");
  const CommonInputs in = parse_common(cfg, /*need_path=*/true);
  json out{{"version", bartnik::kVersion}};
  bool feasible = true;

  try {
    bartnik::validate_data(in.data);
    out["data_valid"] = true;
  } catch (const bartnik::Error& e) {
    out["data_valid"] = false;
    out["data_reason"] = e.what();
    feasible = false;
  }
  out["data"] = bartnik::io::data_json(in.data);
  out["mH0"] = bartnik::hawking_mass_of_data(in.data);

  const auto rc = bartnik::roundness_constants(in.path);
  out["alpha"] = rc.alpha;
  out["beta"] = rc.beta;
  const double r2 = in.data.r_o * in.data.r_o;
  const double hc2 = in.data.hcal2();

  // generic-extension criterion
  {
    json j;
    const double lim_h =
        rc.alpha > 0.0 ? 4.0 * rc.beta / (r2 * rc.alpha)
                       : std::numeric_limits<double>::infinity();
    const double lim_p =
        rc.alpha > 0.0 ? (4.0 * rc.beta - rc.alpha * r2 * hc2) /
                             (rc.alpha * r2)
                       : std::numeric_limits<double>::infinity();
    const bool ok = hc2 < lim_h && in.data.P_o * in.data.P_o < lim_p;
    j["feasible"] = ok;
    j["margin_hcal2"] = lim_h - hc2;
    j["margin_P2"] = lim_p - in.data.P_o * in.data.P_o;
    out["any_extension"] = j;
    feasible = feasible && ok;
  }

  if (cfg.contains("profile")) {
    const auto x = bartnik::io::parse_profile(cfg["profile"], in.data.r_o);
    json j;
    try {
      const auto c = bartnik::collar_constants(in.data, rc, x);
      j["feasible"] = true;
      j["k"] = c.k;
      j["D"] = c.D;
      j["m_bar"] = c.m_bar;
      j["A"] = c.A;
    } catch (const bartnik::Error& e) {
      j["feasible"] = false;
      j["reason"] = e.what();
      feasible = false;
    }
    const auto mono = bartnik::check_monotonicity(
        x, bartnik::hawking_mass_of_data(in.data),
        std::max(2.0 * bartnik::hawking_mass_of_data(in.data), 1e-6),
        working_hi(in.data));
    j["G_nondecreasing"] = mono.g_nondecreasing;
    j["V_increasing"] = mono.v_increasing;
    if (!mono.g_nondecreasing) j["witness_G"] = mono.witness_g;
    if (!mono.v_increasing) j["witness_V"] = mono.witness_v;
    feasible = feasible && mono.g_nondecreasing && mono.v_increasing;
    out["general_extension"] = j;
  }

  if (cfg.contains("cmc")) {
    bartnik::io::require_keys(cfg["cmc"], {"K2", "K1"}, "cmc");
    const double k2 = bartnik::io::require_number(cfg["cmc"], "K2", "cmc");
    const double k1 = bartnik::io::require_number(cfg["cmc"], "K1", "cmc");
    const auto rep = bartnik::cmc_feasibility(in.data, rc, k2, k1);
    out["cmc"] = json{{"feasible", rep.all()},
                      {"not_both_zero", rep.not_both_zero},
                      {"cond_i", rep.cond_i},
                      {"cond_ii", rep.cond_ii},
                      {"cond_iii", rep.cond_iii},
                      {"cond_iv", rep.cond_iv},
                      {"margin_i", rep.margin_i},
                      {"margin_ii", rep.margin_ii},
                      {"margin_iv", rep.margin_iv}};
    feasible = feasible && rep.all();
  }

  {
    // mass-bound hypotheses
    std::optional<double> rmin;
    if (cfg.contains("Rmin")) {
      rmin = bartnik::io::require_number(cfg, "Rmin", "config");
    }
    const auto rep = bartnik::mass_bounds(in.data, in.path, rmin, false);
    out["bound51"] = json{{"feasible", rep.feasible51},
                          {"margin", rep.margin51}};
    out["bound62"] = json{{"feasible", rep.feasible62},
                          {"margin", rep.margin62}};
    if (rmin) {
      out["reduction"] = json{{"feasible", *rmin > 1.5 * hc2},
                              {"margin", *rmin - 1.5 * hc2}};
      feasible = feasible && *rmin > 1.5 * hc2;
    }
    feasible = feasible && rep.feasible51 && rep.feasible62;
  }

  out["feasible"] = feasible;
  const std::string text = out.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  bartnik::io::write_text((fs::path(out_dir) / "feasibility.json").string(),
                          text);
  return feasible ? 0 : 1;
}

// ---- collar ----------------------------------------------------------------

int cmd_collar(const json& cfg, const std::string& out_dir, bool plots) {
  bartnik::io::require_keys(cfg, {"spec", "data", "path", "profile", "collar"},
                            "config");
  const CommonInputs in = parse_common(cfg, true);
  json ccfg = cfg.contains("collar") ? cfg["collar"] : json::object();
  bartnik::io::require_keys(ccfg, {"kind", "grid_points", "margin"}, "collar");
  const std::string kind = ccfg.contains("kind")
                               ? ccfg["kind"].get<std::string>()
                               : std::string("simple");
  bartnik::CollarOptions opts;
  if (ccfg.contains("grid_points")) {
    opts.grid_points = ccfg["grid_points"].get<int>();
  }

  bartnik::CollarSlab slab;
  if (kind == "simple") {
    slab = bartnik::build_simple_collar(in.data, in.path, opts);
  } else if (kind == "general") {
    const auto rc = bartnik::roundness_constants(in.path);
    bartnik::ProfileFunction x =
        cfg.contains("profile")
            ? bartnik::io::parse_profile(cfg["profile"], in.data.r_o)
            : bartnik::find_constant_profile(
                  in.data, rc,
                  ccfg.contains("margin") ? ccfg["margin"].get<double>()
                                          : 2.0);
    slab = bartnik::build_collar(in.data, in.path, x, opts);
  } else {
    throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                         "collar kind must be \"simple\" or \"general\"");
  }

  bartnik::io::write_text((fs::path(out_dir) / "collar.csv").string(),
                          bartnik::io::collar_csv(slab));
  bartnik::io::write_text(
      (fs::path(out_dir) / "collar.json").string(),
      bartnik::io::constants_json(slab).dump(2) + "\n");
  if (plots) {
    std::vector<double> s;
    bartnik::io::Series u{"u", {}}, mu{"mu", {}}, mh{"m_H", {}},
        h2{"Hcal2", {}};
    for (const auto& leaf : slab.leaves) {
      s.push_back(leaf.s);
      u.y.push_back(leaf.u);
      mu.y.push_back(leaf.mu);
      mh.y.push_back(leaf.m_H);
      h2.y.push_back(leaf.hcal2);
    }
    bartnik::io::write_text(
        (fs::path(out_dir) / "collar.svg").string(),
        bartnik::io::svg_lines("collar profile", s, {u, mu, mh, h2}));
  }
  log_info("collar written to " + out_dir);
  return 0;
}

// ---- extend ----------------------------------------------------------------

int cmd_extend(const json& cfg, const std::string& out_dir, bool plots) {
  bartnik::io::require_keys(
      cfg, {"spec", "data", "path", "profile", "cmc", "extend"}, "config");
  const CommonInputs in = parse_common(cfg, true);
  json ecfg = cfg.contains("extend") ? cfg["extend"] : json::object();
  bartnik::io::require_keys(
      ecfg,
      {"collar", "eta", "grid_points", "composite_points",
       "exterior_radius_factor", "eps_offset_steps", "taper"},
      "extend");
  bartnik::AssembleOptions opts;
  if (ecfg.contains("eta")) opts.eta = ecfg["eta"].get<double>();
  if (ecfg.contains("grid_points")) {
    opts.grid_points = ecfg["grid_points"].get<int>();
  }
  if (ecfg.contains("composite_points")) {
    opts.composite_points = ecfg["composite_points"].get<int>();
  }
  if (ecfg.contains("exterior_radius_factor")) {
    opts.exterior_radius_factor =
        ecfg["exterior_radius_factor"].get<double>();
  }
  if (ecfg.contains("eps_offset_steps")) {
    opts.eps_offset_steps = ecfg["eps_offset_steps"].get<double>();
  }
  const std::string kind = ecfg.contains("collar")
                               ? ecfg["collar"].get<std::string>()
                               : std::string("simple");

  bartnik::ExtensionReport rep;
  if (kind == "simple") {
    rep = bartnik::assemble_simple_extension(in.data, in.path, opts);
  } else if (kind == "general") {
    if (!cfg.contains("profile")) {
      throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                           "general extension needs a \"profile\"");
    }
    const auto x = bartnik::io::parse_profile(cfg["profile"], in.data.r_o);
    rep = bartnik::assemble_extension(in.data, in.path, x, opts);
  } else if (kind == "cmc") {
    if (!cfg.contains("cmc")) {
      throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                           "cmc extension needs a \"cmc\" object");
    }
    bartnik::io::require_keys(cfg["cmc"], {"K2", "K1"}, "cmc");
    rep = bartnik::assemble_cmc(
        in.data, in.path,
        bartnik::io::require_number(cfg["cmc"], "K2", "cmc"),
        bartnik::io::require_number(cfg["cmc"], "K1", "cmc"), opts);
  } else {
    throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                         "extend collar must be simple|general|cmc");
  }

  if (ecfg.contains("taper")) {
    bartnik::io::require_keys(ecfg["taper"], {"r_switch", "target"}, "taper");
    const double r_switch =
        bartnik::io::require_number(ecfg["taper"], "r_switch", "taper");
    const auto target =
        bartnik::io::parse_profile(ecfg["taper"]["target"], in.data.r_o);
    bartnik::taper_profile(rep, r_switch, target, opts);
  }

  bartnik::io::write_text((fs::path(out_dir) / "composite.csv").string(),
                          bartnik::io::composite_csv(rep));
  bartnik::io::write_text(
      (fs::path(out_dir) / "extension.json").string(),
      bartnik::io::extension_json(rep).dump(2) + "\n");
  if (plots) {
    std::vector<double> s;
    bartnik::io::Series f{"f", {}}, mu{"mu", {}}, mh{"m_H", {}},
        h2{"Hcal2", {}};
    for (const auto& row : rep.grid) {
      s.push_back(row.s);
      f.y.push_back(row.f);
      mu.y.push_back(row.mu);
      mh.y.push_back(row.m_h);
      h2.y.push_back(row.hcal2);
    }
    bartnik::io::write_text(
        (fs::path(out_dir) / "extension.svg").string(),
        bartnik::io::svg_lines("composite extension", s, {f, mu, mh, h2}));
  }
  log_info("extension written to " + out_dir);
  return 0;
}

// ---- bound -----------------------------------------------------------------

int cmd_bound(const json& cfg, const std::string& out_dir, bool /*plots*/) {
  bartnik::io::require_keys(cfg, {"spec", "data", "path", "Rmin", "bound"},
                            "config");
  const CommonInputs in = parse_common(cfg, true);
  json bcfg = cfg.contains("bound") ? cfg["bound"] : json::object();
  bartnik::io::require_keys(bcfg, {"witness", "sweep"}, "bound");
  std::optional<double> rmin;
  if (cfg.contains("Rmin")) {
    rmin = bartnik::io::require_number(cfg, "Rmin", "config");
  }
  const bool witness =
      bcfg.contains("witness") && bcfg["witness"].get<bool>();
  const auto rep = bartnik::mass_bounds(in.data, in.path, rmin, witness);
  const std::string text = bartnik::io::bounds_json(rep).dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  bartnik::io::write_text((fs::path(out_dir) / "bounds.json").string(), text);

  if (bcfg.contains("sweep")) {
    const json& s = bcfg["sweep"];
    bartnik::io::require_keys(s, {"H_o", "P_o", "alpha", "beta"}, "sweep");
    const auto rows = bartnik::bound_sweep(
        in.data.r_o, s.at("H_o").get<std::vector<double>>(),
        s.at("P_o").get<std::vector<double>>(),
        s.at("alpha").get<std::vector<double>>(),
        s.at("beta").get<std::vector<double>>());
    bartnik::io::write_text((fs::path(out_dir) / "sweep.csv").string(),
                            bartnik::io::sweep_csv(rows));
  }
  return (rep.feasible51 || rep.feasible62) ? 0 : 1;
}

// ---- reduce ----------------------------------------------------------------

int cmd_reduce(const json& cfg, const std::string& out_dir, bool plots) {
  bartnik::io::require_keys(cfg, {"spec", "data", "path", "reduce"}, "config");
  const CommonInputs in = parse_common(cfg, /*need_path=*/false);
  if (!cfg.contains("reduce")) {
    throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                         "config needs a \"reduce\" object");
  }
  const json& rcfg = cfg["reduce"];
  bartnik::io::require_keys(rcfg, {"Rmin", "delta_max", "grid_points"},
                            "reduce");
  double rmin;
  if (rcfg.contains("Rmin")) {
    rmin = bartnik::io::require_number(rcfg, "Rmin", "reduce");
  } else if (in.has_path && !in.path.is_direct()) {
    // scalar curvature of the data metric from the s = 0 row, R = 2K
    const auto& ap = *in.path.axisymmetric;
    const auto k = bartnik::gauss_curvature_grid(ap);
    double kmin = k[0];
    for (std::size_t j = 0; j < ap.theta_axis.size(); ++j) {
      kmin = std::min(kmin, k[j]);
    }
    rmin = 2.0 * kmin / (in.data.r_o * in.data.r_o);
  } else {
    throw bartnik::Error(bartnik::ErrorKind::SchemaError,
                         "reduce needs Rmin or an axisymmetric path");
  }
  const double delta_max =
      bartnik::io::require_number(rcfg, "delta_max", "reduce");
  const int grid = rcfg.contains("grid_points")
                       ? rcfg["grid_points"].get<int>()
                       : 2001;
  const auto collar = bartnik::build_reduction(in.data, rmin, delta_max, grid);
  bartnik::io::write_text((fs::path(out_dir) / "reduction.csv").string(),
                          bartnik::io::reduction_csv(collar));
  const std::string text = bartnik::io::reduction_json(collar).dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  bartnik::io::write_text((fs::path(out_dir) / "reduction.json").string(),
                          text);
  if (plots) {
    bartnik::io::Series a{"a", collar.a}, f{"f", collar.f},
        mu{"mu", collar.mu}, h{"H", collar.H};
    bartnik::io::write_text(
        (fs::path(out_dir) / "reduction.svg").string(),
        bartnik::io::svg_lines("reduction collar", collar.t, {a, f, mu, h}));
  }
  return 0;
}

using CommandFn = int (*)(const json&, const std::string&, bool);

int run_one(CommandFn fn, const json& cfg, const std::string& out_dir,
            bool plots) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  try {
    return fn(cfg, out_dir, plots);
  } catch (const bartnik::Error& e) {
    const std::string text = bartnik::io::error_json(e).dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    bartnik::io::write_text((fs::path(out_dir) / "error.json").string(),
                            text);
    return bartnik::error_kind_exit_code(e.kind);
  } catch (const json::exception& e) {
    std::fprintf(stdout, "{\"error\": {\"kind\": \"SchemaError\", "
                         "\"message\": \"%s\"}}\n",
                 e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stdout, "{\"error\": {\"kind\": \"NumericalFailure\", "
                         "\"message\": \"%s\"}}\n",
                 e.what());
    return 3;
  }
}

int dispatch(CommandFn fn, const std::string& config_path,
             const std::string& out_dir, bool plots, bool sweep) {
  json cfg;
  try {
    cfg = bartnik::io::load_config(config_path);
  } catch (const bartnik::Error& e) {
    const std::string text = bartnik::io::error_json(e).dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    return bartnik::error_kind_exit_code(e.kind);
  }
  if (!sweep) {
    if (!cfg.is_object()) {
      std::fputs("{\"error\": {\"kind\": \"SchemaError\", \"message\": "
                 "\"expected a single config object\"}}\n",
                 stdout);
      return 2;
    }
    return run_one(fn, cfg, out_dir, plots);
  }
  if (!cfg.is_array()) {
    std::fputs("{\"error\": {\"kind\": \"SchemaError\", \"message\": "
               "\"--sweep expects an array of configs\"}}\n",
               stdout);
    return 2;
  }
  std::vector<int> codes(cfg.size(), 0);
  bartnik::parallel_for(cfg.size(), [&](std::size_t i) {
    char sub[16];
    std::snprintf(sub, sizeof(sub), "%03zu", i);
    const std::string dir = (fs::path(out_dir) / sub).string();
    json item = cfg[i];
    if (item.is_object() &&
        (!item.contains("spec") || item["spec"] != bartnik::kSchemaTag)) {
      codes[i] = 2;
      return;
    }
    codes[i] = run_one(fn, item, dir, plots);
  });
  int worst = 0;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bartnik-data extensions: collars, Schwarzschild gluing and "
               "mass bounds"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string log_level = "info";
  bool plots = false;
  bool sweep = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--plots", plots, "emit SVG line plots");
    sub->add_option("--log-level", log_level, "quiet|info|debug");
    sub->add_flag("--sweep", sweep,
                  "config is an array; fan out to out/NNN subdirectories");
  };

  CLI::App* v = app.add_subcommand("validate", "feasibility report");
  CLI::App* c = app.add_subcommand("collar", "build a collar");
  CLI::App* e = app.add_subcommand("extend", "assemble a full extension");
  CLI::App* b = app.add_subcommand("bound", "evaluate the mass bounds");
  CLI::App* r = app.add_subcommand("reduce", "build the reduction collar");
  for (CLI::App* sub : {v, c, e, b, r}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  g_log_level = log_level == "quiet" ? 0 : (log_level == "debug" ? 2 : 1);

  if (v->parsed()) return dispatch(cmd_validate, config_path, out_dir, plots,
                                   sweep);
  if (c->parsed()) return dispatch(cmd_collar, config_path, out_dir, plots,
                                   sweep);
  if (e->parsed()) return dispatch(cmd_extend, config_path, out_dir, plots,
                                   sweep);
  if (b->parsed()) return dispatch(cmd_bound, config_path, out_dir, plots,
                                   sweep);
  return dispatch(cmd_reduce, config_path, out_dir, plots, sweep);
}
