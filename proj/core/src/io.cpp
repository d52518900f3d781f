#include "cbs/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cbs {

namespace {

const char* kUnitsHeader = "# units: intensities in |g(r_mean)|^2; rates in gamma\n";

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["sweep"] = cfg.sweep == RunConfig::SweepKind::s ? "s" : "theta";
  j["s_min"] = cfg.s_min;
  j["s_max"] = cfg.s_max;
  j["s_points"] = cfg.s_points;
  j["log_grid"] = cfg.log_grid;
  j["s_fixed"] = cfg.s_fixed;
  j["theta_max"] = cfg.theta_max;
  j["theta_points"] = cfg.theta_points;
  j["delta"] = cfg.delta;
  j["r_mean"] = cfg.average.r_mean;
  j["window"] = cfg.average.window;
  j["n_orient"] = cfg.average.n_orient;
  j["n_radial"] = cfg.average.n_radial;
  j["mode"] = cfg.average.mode == AverageSpec::Mode::quadrature ? "quad" : "mc";
  j["seed"] = cfg.average.seed;
  j["format"] = cfg.format == RunConfig::Format::csv ? "csv" : "json";
  j["out"] = cfg.out_path;
  j["units"] = "intensities in |g(r_mean)|^2; rates in gamma";
  return j;
}

}  // namespace

std::string csv_render(const std::vector<CbsPoint>& rows) {
  std::ostringstream out;
  out << kUnitsHeader;
  out << "s,L_tot,C_tot0,I_tot,L_el,C_el,L_inel,C_inel,alpha,alpha_err\n";
  for (const auto& r : rows) {
    out << fmt(r.s) << ',' << fmt(r.L_tot) << ',' << fmt(r.C_tot0) << ',' << fmt(r.I_tot) << ','
        << fmt(r.L_el) << ',' << fmt(r.C_el) << ',' << fmt(r.L_inel) << ',' << fmt(r.C_inel)
        << ',' << fmt(r.alpha) << ',' << fmt(r.alpha_err) << '\n';
  }
  return out.str();
}

std::string csv_render(const std::vector<ThetaPoint>& rows) {
  std::ostringstream out;
  out << kUnitsHeader;
  out << "theta,C_tot,L_tot\n";
  for (const auto& r : rows)
    out << fmt(r.theta) << ',' << fmt(r.C_tot) << ',' << fmt(r.L_tot) << '\n';
  return out.str();
}

std::string json_render(const RunConfig& cfg, const std::vector<CbsPoint>& rows) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = config_echo(cfg);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["s"] = r.s;
    row["L_tot"] = r.L_tot;
    row["C_tot0"] = r.C_tot0;
    row["I_tot"] = r.I_tot;
    row["L_el"] = r.L_el;
    row["C_el"] = r.C_el;
    row["L_inel"] = r.L_inel;
    row["C_inel"] = r.C_inel;
    row["alpha"] = r.alpha;
    row["alpha_err"] = r.alpha_err;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string json_render(const RunConfig& cfg, const std::vector<ThetaPoint>& rows) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = config_echo(cfg);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["theta"] = r.theta;
    row["C_tot"] = r.C_tot;
    row["L_tot"] = r.L_tot;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string verify_render(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  value=" << fmt(c.value)
        << "  threshold=" << fmt(c.threshold) << '\n';
  }
  if (report.failures() == 0)
    out << "all " << report.checks.size() << " checks passed\n";
  else
    out << report.failures() << " of " << report.checks.size() << " checks FAILED\n";
  return out.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_output: cannot open " + path);
  f << content;
  if (!f) throw std::runtime_error("write_output: write failed for " + path);
}

}  // namespace cbs
