#include <cstdio>
#include <fstream>

#include "giantscatter/analytic.hpp"
#include "giantscatter/presets.hpp"

namespace giantscatter {

using nlohmann::json;

namespace {

json axis(const std::string& name, json start, json stop, int count = 801, std::vector<std::string> also = {}) {
  json a = {{"name", name}, {"start", std::move(start)}, {"stop", std::move(stop)}, {"count", count}};
  if (!also.empty()) a["also"] = also;
  return a;
}

// Two-photon resonance of the effective giant atom, -Delta - 2 Omega^2 / Delta.
double centre_A(double delta, double omega) { return -delta - 2.0 * omega * omega / delta; }

FigurePreset transmission_panel(const std::string& id, double delta, const std::string& theta, double half_width) {
  const double c = centre_A(delta, 1.0);
  FigurePreset f;
  f.id = id;
  f.description = theta == "0" ? "reciprocal transmission, full vs effective model"
                               : "nonreciprocal transmission, full vs effective model";
  f.config = {{"model", "A"},
              {"params",
               {{"gamma", 0.001},
                {"V6", 20000},
                {"drive1", {{"Omega", 1}, {"Delta", delta}, {"theta", theta}}},
                {"mode_a", {{"Gamma", 1}, {"phi", "pi/2"}}}}},
              {"axis1", axis("delta_ka", c - half_width, c + half_width)}};
  if (theta == "0")
    f.config["outputs"] = {"T12_full", "T12_eff"};
  else
    f.config["outputs"] = {"T12_full", "T21_full", "T12_eff", "T21_eff"};
  f.caption_parameters = {{"phi_a", kPi / 2}, {"Delta_c1", delta}, {"theta1", theta == "0" ? 0.0 : kPi / 2},
                          {"gamma", 0.001},   {"Gamma_a", 1.0},    {"Omega_c1", 1.0},
                          {"V6", 20000.0}};
  return f;
}

FigurePreset symmetric_converter(const std::string& id, double gamma, double omega) {
  FigurePreset f;
  f.id = id;
  f.description = "symmetric frequency converter, effective vs full model";
  f.config = {{"model", "B"},
              {"params",
               {{"gamma", gamma},
                {"V6", 20000},
                {"drive1", {{"Omega", omega}, {"Delta", 30}}},
                {"drive2", {{"Omega", omega}, {"Delta", -30}}},
                {"mode_a", {{"Gamma", 1}}},
                {"mode_b", {{"Gamma", 1}}}}},
              {"axis1", axis("delta_ka", -30.0 - 0.025 * omega, -30.0 + 0.025 * omega)},
              {"outputs", {"S11_eff", "S12_eff", "Sconv_eff", "S11_full", "S12_full", "Sconv_full"}}};
  f.caption_parameters = {{"gamma", gamma}, {"Omega_c1", omega},  {"Omega_c2", omega}, {"Gamma_a", 1.0},
                          {"Gamma_b", 1.0}, {"Delta_c1", 30.0},   {"Delta_c2", -30.0}, {"V6", 20000.0}};
  f.notes.push_back("theta2 and phi_b are not stated; the printed efficiencies do not depend on them");
  return f;
}

FigurePreset asymmetric_converter(const std::string& id, double gamma, const std::string& phi_b,
                                  const std::string& theta) {
  FigurePreset f;
  f.id = id;
  f.description = "asymmetric frequency converter, port-1 incidence";
  f.config = {{"model", "C"},
              {"params",
               {{"gamma", gamma},
                {"V6", 20000},
                {"drive1", {{"Omega", 2}, {"Delta", 30}, {"theta", theta}}},
                {"drive2", {{"Omega", 2}, {"Delta", -30}, {"theta", theta}}},
                {"mode_a", {{"Gamma", 1}, {"phi", "pi/2"}}},
                {"mode_b", {{"Gamma", 1}, {"phi", phi_b}}}}},
              {"axis1", axis("delta_ka", -30.1, -29.9)},
              {"outputs",
               {"P11_eff", "P12_eff", "P13_eff", "P14_eff", "P11_effsolve", "P12_effsolve", "P13_effsolve",
                "P14_effsolve"}}};
  const double theta_value = theta == "0" ? 0.0 : kPi / 2;
  const double phi_b_value = phi_b == "pi/2" ? kPi / 2 : phi_b == "pi" ? kPi : 3 * kPi / 2;
  f.caption_parameters = {{"gamma", gamma},       {"phi_b", phi_b_value}, {"theta1", theta_value},
                          {"theta2", theta_value}, {"phi_a", kPi / 2},     {"Gamma_a", 1.0},
                          {"Gamma_b", 1.0},        {"Omega_c1", 2.0},      {"Omega_c2", 2.0},
                          {"Delta_c1", 30.0},      {"Delta_c2", -30.0},    {"V6", 20000.0}};
  return f;
}

FigurePreset conversion_map(const std::string& id, int port, bool versus_delta) {
  FigurePreset f;
  f.id = id;
  const std::string column = "P" + std::to_string(port) + "conv_eff";
  f.config = {{"model", "C"},
              {"params",
               {{"gamma", 0},
                {"V6", 20000},
                {"delta_ka", -30},
                {"drive1", {{"Omega", 2}, {"Delta", 30}}},
                {"drive2", {{"Omega", 2}, {"Delta", -30}, {"theta", 0}}},
                {"mode_a", {{"Gamma", 1}, {"phi", "pi/2"}}},
                {"mode_b", {{"Gamma", 1}, {"phi", "pi/2"}}}}},
              {"outputs", {column}}};
  f.caption_parameters = {{"gamma", 0.0},    {"theta2", 0.0},   {"Gamma_a", 1.0},   {"Gamma_b", 1.0},
                          {"Omega_c1", 2.0}, {"Omega_c2", 2.0}, {"Delta_c1", 30.0}, {"Delta_c2", -30.0},
                          {"V6", 20000.0}};
  if (versus_delta) {
    f.description = "total conversion from port " + std::to_string(port) + " versus delta_ka and theta1";
    f.config["axis1"] = axis("delta_ka", -30.1, -29.9);
    f.config["axis2"] = axis("theta1", "-pi", "pi");
    f.caption_parameters["phi_a"] = kPi / 2;
    f.caption_parameters["phi_b"] = kPi / 2;
  } else {
    f.description = "total conversion from port " + std::to_string(port) + " versus phi_a = phi_b and theta1";
    f.config["axis1"] = axis("phi_a", 0, "2pi", 801, {"phi_b"});
    f.config["axis2"] = axis("theta1", "-pi", "pi");
    f.caption_parameters["delta_ka"] = -30.0;
  }
  return f;
}

FigurePreset continuous_panel(const std::string& id, const std::string& theta) {
  const double c = centre_A(30.0, 1.0);
  FigurePreset f;
  f.id = id;
  f.description = "point-like vs continuous coupling, Lambda = pi/2";
  f.config = {{"model", "A"},
              {"params",
               {{"gamma", 0.001},
                {"V6", 20000},
                {"Lambda", "pi/2"},
                {"drive1", {{"Omega", 1}, {"Delta", 30}, {"theta", theta}}},
                {"mode_a", {{"Gamma", 1}, {"phi", "pi/2"}}}}},
              {"axis1", axis("delta_ka", c - 0.03, c + 0.03)},
              {"outputs", {"T12_eff", "T21_eff", "T12_cont", "T21_cont"}}};
  f.caption_parameters = {{"theta1", theta == "0" ? 0.0 : kPi / 2},
                          {"phi_a", kPi / 2},
                          {"Lambda", kPi / 2},
                          {"Gamma_a", 1.0},
                          {"V6", 20000.0},
                          {"Omega_c1", 1.0},
                          {"Delta_c1", 30.0},
                          {"gamma", 0.001}};
  f.notes.push_back("continuous columns use overlaps from quadrature of the defining integrals");
  return f;
}

std::vector<FigurePreset> build_presets() {
  std::vector<FigurePreset> all;
  all.push_back(transmission_panel("fig2a", 10, "0", 0.3));
  all.push_back(transmission_panel("fig2b", 20, "0", 0.1));
  all.push_back(transmission_panel("fig2c", 30, "0", 0.05));
  {
    FigurePreset f = transmission_panel("fig2d", 30, "0", 1.0);
    f.description = "reciprocal transmission versus delta_ka and phi_a";
    f.config["axis1"] = axis("delta_ka", -31, -29);
    f.config["axis2"] = axis("phi_a", 0, "2pi");
    f.config["outputs"] = {"T12_eff", "T12_full"};
    f.caption_parameters.erase("phi_a");
    all.push_back(std::move(f));
  }
  all.push_back(transmission_panel("fig3a", 10, "pi/2", 0.3));
  all.push_back(transmission_panel("fig3b", 20, "pi/2", 0.1));
  all.push_back(transmission_panel("fig3c", 30, "pi/2", 0.05));
  {
    const double c = centre_A(30.0, 1.0);
    FigurePreset f = transmission_panel("fig3d", 30, "pi/2", 1.0);
    f.description = "contrast ratio versus theta1 and phi_a";
    f.config["params"]["delta_ka"] = c;
    f.config["axis1"] = axis("theta1", 0, "2pi");
    f.config["axis2"] = axis("phi_a", 0, "2pi");
    f.config["outputs"] = {"I_eff"};
    f.caption_parameters.erase("phi_a");
    f.caption_parameters.erase("theta1");
    char note[160];
    std::snprintf(note, sizeof note,
                  "delta_ka is the exact resonance %.10g MHz; the panel label rounds it to -30.067 MHz "
                  "(difference %.3g MHz)",
                  c, c + 30.067);
    f.notes.push_back(note);
    all.push_back(std::move(f));
  }
  all.push_back(symmetric_converter("fig5a", 0.0, 1.0));
  all.push_back(symmetric_converter("fig5b", 0.001, 1.0));
  all.push_back(symmetric_converter("fig5c", 0.0, 2.0));
  all.push_back(symmetric_converter("fig5d", 0.001, 2.0));
  all.push_back(asymmetric_converter("fig7a", 0.0, "pi/2", "0"));
  all.push_back(asymmetric_converter("fig7b", 0.001, "pi/2", "0"));
  all.push_back(asymmetric_converter("fig7c", 0.0, "pi/2", "pi/2"));
  all.push_back(asymmetric_converter("fig7d", 0.001, "pi/2", "pi/2"));
  all.push_back(asymmetric_converter("fig7e", 0.0, "pi", "pi/2"));
  all.push_back(asymmetric_converter("fig7f", 0.0, "3pi/2", "pi/2"));
  all.push_back(conversion_map("fig8a", 1, true));
  all.push_back(conversion_map("fig8b", 2, true));
  all.push_back(conversion_map("fig8c", 1, false));
  all.push_back(conversion_map("fig8d", 2, false));
  all.push_back(continuous_panel("figS1a", "0"));
  all.push_back(continuous_panel("figS1b", "pi/2"));
  return all;
}

}  // namespace

const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets = build_presets();
  return presets;
}

const FigurePreset& find_preset(const std::string& id) {
  for (const auto& f : figure_presets())
    if (f.id == id) return f;
  std::string list;
  for (const auto& f : figure_presets()) list += (list.empty() ? "" : ", ") + f.id;
  throw ConfigError("unknown figure id '" + id + "' (available: " + list + ")");
}

double spec_parameter(const SweepSpec& spec, const std::string& name) {
  const ScatterParams& p = spec.params;
  if (name == "gamma") return p.gamma_MHz;
  if (name == "V6") return p.vdw_shift_MHz;
  if (name == "delta_ka") return p.delta_ka_MHz;
  if (name == "Lambda") return spec.lambda;
  if (name == "Delta_c1") return p.drive1.detuning_MHz;
  if (name == "Omega_c1") return p.drive1.rabi_MHz;
  if (name == "theta1") return p.drive1.local_phase_rad;
  if (name == "phi_a") return p.mode_a.propagation_phase_rad;
  if (name == "Gamma_a") return p.mode_a.decay_MHz;
  if (name == "Delta_c2") return p.second_drive().detuning_MHz;
  if (name == "Omega_c2") return p.second_drive().rabi_MHz;
  if (name == "theta2") return p.second_drive().local_phase_rad;
  if (name == "phi_b") return p.second_mode().propagation_phase_rad;
  if (name == "Gamma_b") return p.second_mode().decay_MHz;
  throw std::invalid_argument("unknown parameter '" + name + "'");
}

ReproduceResult reproduce(const std::string& id, const std::filesystem::path& out_dir, std::optional<int> points,
                          int jobs, TableFormat format) {
  const FigurePreset& preset = find_preset(id);
  json config = preset.config;
  if (points) {
    config["axis1"]["count"] = *points;
    if (config.contains("axis2")) config["axis2"]["count"] = *points;
  }
  const SweepSpec spec = parse_config(config);
  const SweepTable table = run_sweep(spec, jobs);

  std::filesystem::create_directories(out_dir);
  ReproduceResult result;
  result.rows = table.rows.size();
  result.table_path = out_dir / (id + (format == TableFormat::csv ? ".csv" : ".json"));
  result.manifest_path = out_dir / (id + ".manifest.json");

  std::ofstream(result.table_path, std::ios::binary) << emit(table, format);
  const json manifest = {{"figure", preset.id},
                         {"description", preset.description},
                         {"caption_parameters", preset.caption_parameters},
                         {"resolved_config", spec.resolved()},
                         {"notes", preset.notes},
                         {"warnings", table.provenance.at("warnings")},
                         {"table", result.table_path.filename().string()},
                         {"rows", result.rows},
                         {"tool", "giantscatter"},
                         {"version", kToolVersion}};
  std::ofstream(result.manifest_path, std::ios::binary) << manifest.dump(2) << "\n";
  return result;
}

}  // namespace giantscatter
