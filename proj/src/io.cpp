#include "bartnik/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bartnik/version.hpp"

namespace bartnik::io {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::InvalidInput, "cannot open for writing: " + path);
  }
  out << text;
}

namespace {

void append_row(std::string& out, const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ',';
    out += format_g17(vals[i]);
  }
  out += '\n';
}

}  // namespace

std::string solution_csv(const RadialSolution& sol) {
  std::string out = "s,u,up,upp\n";
  for (std::size_t i = 0; i < sol.s.size(); ++i) {
    append_row(out, {sol.s[i], sol.u[i], sol.up[i], sol.upp[i]});
  }
  return out;
}

std::string collar_csv(const CollarSlab& slab) {
  std::string out = "s,u,H,P,Hcal2,mu,mH,dec_margin\n";
  for (const CollarLeaf& leaf : slab.leaves) {
    append_row(out, {leaf.s, leaf.u, leaf.H, leaf.P, leaf.hcal2, leaf.mu,
                     leaf.m_H, leaf.dec_margin});
  }
  return out;
}

std::string reduction_csv(const ReductionCollar& c) {
  std::string out = "t,a,b,f,fp,H,P,mu,Jnu_residual\n";
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    append_row(out, {c.t[i], c.a[i], c.b[i], c.f[i], c.fp[i], c.H[i], c.P[i],
                     c.mu[i], c.jnu[i]});
  }
  return out;
}

std::string composite_csv(const ExtensionReport& rep) {
  std::string out = "piece,s,f,fp,mu,mH,Hcal2\n";
  for (const CompositeRow& row : rep.grid) {
    out += piece_kind_name(row.piece);
    out += ',';
    out += format_g17(row.s) + ',' + format_g17(row.f) + ',' +
           format_g17(row.fp) + ',' + format_g17(row.mu) + ',' +
           format_g17(row.m_h) + ',' + format_g17(row.hcal2) + '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "r_o,H_o,P_o,alpha,beta,mH0,bound51,bound62,feasible51,feasible62\n";
  for (const SweepRow& r : rows) {
    append_row(out, {r.r_o, r.H_o, r.P_o, r.alpha, r.beta, r.m_h0, r.bound51,
                     r.bound62, r.feasible51 ? 1.0 : 0.0,
                     r.feasible62 ? 1.0 : 0.0});
  }
  return out;
}

json data_json(const BartnikData& d) {
  return json{{"r_o", d.r_o},
              {"H_o", d.H_o},
              {"P_o", d.P_o},
              {"omega_perp_zero", d.omega_perp_zero}};
}

json constants_json(const CollarSlab& slab) {
  const CollarConstants& c = slab.constants;
  json j{{"version", kVersion},
         {"data", data_json(slab.data)},
         {"alpha", slab.rc.alpha},
         {"beta", slab.rc.beta},
         {"k", c.k},
         {"D", c.D},
         {"m_bar", c.m_bar},
         {"A", c.A},
         {"x_at_ro", c.x_ro},
         {"profile_sign", c.sign},
         {"simple", slab.simple},
         {"boundary", {{"H", slab.boundary().H}, {"P", slab.boundary().P}}},
         {"end",
          {{"u", slab.end().u},
           {"m_H", slab.end().m_H},
           {"Hcal2", slab.end().hcal2}}}};
  if (std::isfinite(c.feasC1)) {
    j["feasC1"] = c.feasC1;
  } else {
    j["feasC1"] = "inf";
  }
  j["feasC2"] = c.feasC2;
  double min_margin = slab.leaves.front().dec_margin;
  for (const CollarLeaf& leaf : slab.leaves) {
    min_margin = std::min(min_margin, leaf.dec_margin);
  }
  j["dec_min_margin"] = min_margin;
  return j;
}

json extension_json(const ExtensionReport& rep) {
  json pieces = json::array();
  for (const Piece& p : rep.pieces) {
    pieces.push_back(
        json{{"kind", piece_kind_name(p.kind)}, {"lo", p.lo}, {"hi", p.hi}});
  }
  json joints = json::array();
  for (const JointDefect& j : rep.audits.joints) {
    joints.push_back(json{{"s", j.s}, {"df", j.df}, {"dfp", j.dfp}});
  }
  json out{
      {"version", kVersion},
      {"collar", constants_json(rep.collar)},
      {"exterior_mass", rep.exterior_mass},
      {"s_hat", rep.s_hat},
      {"pieces", pieces},
      {"glue_certificate",
       {{"d", rep.glue_cert.d},
        {"epsilon", rep.glue_cert.epsilon},
        {"delta", rep.glue_cert.delta},
        {"tau0", rep.glue_cert.tau0},
        {"ramp_len", rep.glue_cert.ramp_len},
        {"min_margin", rep.glue_cert.min_margin},
        {"max_domega", rep.glue_cert.max_domega},
        {"zeta_residual", rep.glue_cert.zeta_residual}}},
      {"bend_certificate",
       {{"s_o", rep.bend_rec.s_o},
        {"delta", rep.bend_rec.delta},
        {"kappa", rep.bend_rec.kappa},
        {"min_correction", rep.bend_rec.min_correction},
        {"slope_gap", rep.bend_rec.slope_gap}}},
      {"audits",
       {{"dec_min_margin", rep.audits.dec_min_margin},
        {"min_hcal2", rep.audits.min_hcal2},
        {"min_f_minus_2mH_increment", rep.audits.min_f_minus_2mh},
        {"max_joint_df", rep.audits.max_joint_df},
        {"max_joint_dfp", rep.audits.max_joint_dfp},
        {"joints", joints},
        {"exterior_isometry", rep.audits.exterior_isometry},
        {"exterior_mass_drift", rep.audits.exterior_mass_drift},
        {"trapped_d_margin", rep.audits.trapped_d_margin},
        {"trapped_retries", rep.audits.trapped_retries}}}};
  if (rep.cmc_value) {
    out["cmc_value"] = *rep.cmc_value;
  }
  if (rep.taper) {
    out["taper"] = json{{"r_switch", rep.taper->r_switch},
                        {"identity", rep.taper->identity},
                        {"mu_min", rep.taper->mu_min},
                        {"hcal2_min", rep.taper->hcal2_min}};
  }
  return out;
}

json bounds_json(const MassBoundReport& rep) {
  json j{{"version", kVersion},
         {"mH0", rep.m_h0},
         {"feasible51", rep.feasible51},
         {"margin51", rep.margin51},
         {"feasible62", rep.feasible62},
         {"margin62", rep.margin62}};
  if (rep.bound51) j["bound51"] = *rep.bound51;
  if (rep.bound62) j["bound62"] = *rep.bound62;
  if (rep.witness_mh1) j["witness_mH1"] = *rep.witness_mh1;
  return j;
}

json reduction_json(const ReductionCollar& c) {
  return json{{"version", kVersion},
              {"eps", c.eps},
              {"C", c.C},
              {"Rmin", c.r_min},
              {"delta", c.delta},
              {"area_factor", c.area_factor},
              {"mu_min", c.mu_min},
              {"endpoint", {{"H", c.endpoint_h}, {"P", c.endpoint_p}}}};
}

json error_json(const Error& e) {
  return json{{"error",
               {{"kind", error_kind_name(e.kind)},
                {"message", e.what()},
                {"where", e.where}}}};
}

std::string svg_lines(const std::string& title, const std::vector<double>& x,
                      const std::vector<Series>& series) {
  const int width = 840, height = 520;
  const int ml = 70, mr = 20, mt = 40, mb = 45;
  double x_lo = x.front(), x_hi = x.back();
  double y_lo = 0.0, y_hi = 1.0;
  bool first = true;
  for (const Series& s : series) {
    for (double v : s.y) {
      if (!std::isfinite(v)) continue;
      if (first) {
        y_lo = y_hi = v;
        first = false;
      }
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (y_hi - y_lo < 1e-30) {
    y_hi += 1.0;
    y_lo -= 1.0;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  auto px = [&](double v) {
    return ml + (v - x_lo) / (x_hi - x_lo) * (width - ml - mr);
  };
  auto py = [&](double v) {
    return height - mb - (v - y_lo) / (y_hi - y_lo) * (height - mt - mb);
  };
  static const char* colors[] = {"#1f6fb4", "#d1495b", "#2e8653", "#8a5fb4",
                                 "#c07f1f"};
  char buf[160];
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" "
         "height=\"520\" viewBox=\"0 0 840 520\">\n";
  out += "<rect width=\"840\" height=\"520\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" "
                "font-size=\"16\">%s</text>\n",
                ml, title.c_str());
  out += buf;
  // axes
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" "
                "stroke=\"black\"/>\n",
                ml, height - mb, width - mr, height - mb);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" "
                "stroke=\"black\"/>\n",
                ml, mt, ml, height - mb);
  out += buf;
  for (int tick = 0; tick <= 5; ++tick) {
    const double xv = x_lo + (x_hi - x_lo) * tick / 5.0;
    const double yv = y_lo + (y_hi - y_lo) * tick / 5.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"11\" text-anchor=\"middle\">%.6g</text>\n",
                  px(xv), height - mb + 18, xv);
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"11\" text-anchor=\"end\">%.6g</text>\n",
                  ml - 6, py(yv) + 4, yv);
    out += buf;
  }
  int ci = 0;
  for (const Series& s : series) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += colors[ci % 5];
    out += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x[i]), py(s.y[i]));
      out += buf;
    }
    out += "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"12\" fill=\"%s\">%s</text>\n",
                  width - mr - 150, mt + 16 * (ci + 1), colors[ci % 5],
                  s.name.c_str());
    out += buf;
    ++ci;
  }
  out += "</svg>\n";
  return out;
}

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& context) {
  if (!obj.is_object()) {
    throw Error(ErrorKind::SchemaError, context + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const std::string& key : allowed) {
      if (item.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw Error(ErrorKind::SchemaError,
                  "unknown field \"" + item.key() + "\" in " + context);
    }
  }
}

double require_number(const json& obj, const std::string& key,
                      const std::string& context) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw Error(ErrorKind::SchemaError,
                context + " needs numeric field \"" + key + "\"");
  }
  return obj[key].get<double>();
}

BartnikData parse_data(const json& j) {
  require_keys(j, {"r_o", "H_o", "P_o", "omega_perp_zero"}, "data");
  BartnikData d;
  d.r_o = require_number(j, "r_o", "data");
  d.H_o = require_number(j, "H_o", "data");
  d.P_o = require_number(j, "P_o", "data");
  if (j.contains("omega_perp_zero")) {
    if (!j["omega_perp_zero"].is_boolean()) {
      throw Error(ErrorKind::SchemaError, "omega_perp_zero must be boolean");
    }
    d.omega_perp_zero = j["omega_perp_zero"].get<bool>();
  }
  return d;
}

PathDescriptor parse_path(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorKind::SchemaError, "path needs a \"kind\" field");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "direct") {
    require_keys(j, {"kind", "alpha", "beta", "freeze_eps"}, "path");
    const double alpha = require_number(j, "alpha", "path");
    const double beta = require_number(j, "beta", "path");
    double freeze = 0.1;
    if (j.contains("freeze_eps")) freeze = j["freeze_eps"].get<double>();
    return PathDescriptor::make_direct(alpha, beta, freeze);
  }
  if (kind == "axisymmetric") {
    require_keys(j, {"kind", "freeze_eps", "s_axis", "theta_axis", "psi"},
                 "path");
    AxisymmetricPath path;
    path.freeze_eps = require_number(j, "freeze_eps", "path");
    path.s_axis = j.at("s_axis").get<std::vector<double>>();
    path.theta_axis = j.at("theta_axis").get<std::vector<double>>();
    const auto rows = j.at("psi");
    if (!rows.is_array() || rows.size() != path.s_axis.size()) {
      throw Error(ErrorKind::SchemaError,
                  "psi must be a row-major 2-D array over (s, theta)");
    }
    for (const auto& row : rows) {
      const auto vals = row.get<std::vector<double>>();
      if (vals.size() != path.theta_axis.size()) {
        throw Error(ErrorKind::SchemaError, "psi row length mismatch");
      }
      path.psi.insert(path.psi.end(), vals.begin(), vals.end());
    }
    return PathDescriptor::make_axisymmetric(std::move(path));
  }
  throw Error(ErrorKind::SchemaError, "unknown path kind: " + kind);
}

ProfileFunction parse_profile(const json& j, double r_anchor) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorKind::SchemaError, "profile needs a \"kind\" field");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    require_keys(j, {"kind", "L1"}, "profile");
    return ProfileFunction::constant(require_number(j, "L1", "profile"));
  }
  if (kind == "inverse_sqrt") {
    require_keys(j, {"kind", "B"}, "profile");
    return ProfileFunction::inverse_sqrt(require_number(j, "B", "profile"),
                                         r_anchor);
  }
  if (kind == "cmc") {
    require_keys(j, {"kind", "K2", "K1"}, "profile");
    return ProfileFunction::cmc(require_number(j, "K2", "profile"),
                                require_number(j, "K1", "profile"), r_anchor);
  }
  if (kind == "sqrt_two_over_r") {
    require_keys(j, {"kind", "C3"}, "profile");
    return ProfileFunction::sqrt_two_over_r(
        require_number(j, "C3", "profile"), r_anchor);
  }
  if (kind == "custom") {
    require_keys(j, {"kind", "csv"}, "profile");
    if (!j.contains("csv") || !j["csv"].is_string()) {
      throw Error(ErrorKind::SchemaError, "custom profile needs a csv path");
    }
    return ProfileFunction::custom_from_csv(j["csv"].get<std::string>());
  }
  throw Error(ErrorKind::SchemaError, "unknown profile kind: " + kind);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::SchemaError, "cannot open config: " + path);
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError,
                std::string("config parse error: ") + e.what());
  }
  if (!j.is_object() && !j.is_array()) {
    throw Error(ErrorKind::SchemaError, "config must be an object or array");
  }
  if (j.is_object()) {
    if (!j.contains("spec") || j["spec"] != kSchemaTag) {
      throw Error(ErrorKind::SchemaError,
                  std::string("config must carry \"spec\": \"") + kSchemaTag +
                      "\"");
    }
  }
  return j;
}

}  // namespace bartnik::io
