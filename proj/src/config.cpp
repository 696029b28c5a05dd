#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "giantscatter/sweep.hpp"

namespace giantscatter {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_derived(const std::string& path, const std::string& key) {
  if (key == "delta_kb")
    fail(path, "delta_kb is derived, not an input: delta_kb = delta_ka + Delta_c1 - Delta_c2, "
               "which is -delta_ka when Delta_c2 = -Delta_c1; set delta_ka instead");
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string sub = path.empty() ? key : path + "." + key;
    reject_derived(sub, key);
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) {
      std::string list;
      for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
      fail(sub, "unknown key (allowed: " + list + ")");
    }
  }
}

// Number (also as a string), or an angle written with pi: "pi/2", "3pi/2", "-0.25*pi".
double number(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
  }
  if (v.is_string()) {
    static const std::regex pattern(R"(^\s*([+-]?)\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    const std::string s = v.get<std::string>();
    std::smatch m;
    if (std::regex_match(s, m, pattern)) {
      double x = kPi;
      if (m[2].length() > 0 && m[2].str() != ".") x *= std::stod(m[2].str());
      if (m[3].matched) {
        const double den = std::stod(m[3].str());
        if (den == 0.0) fail(path, "division by zero in '" + s + "'");
        x /= den;
      }
      return m[1].str() == "-" ? -x : x;
    }
    static const std::regex plain(R"(^\s*[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\s*$)");
    if (std::regex_match(s, plain)) return std::stod(s);
    fail(path, "cannot read '" + s + "' as a number or multiple of pi");
  }
  fail(path, "expected a number");
}

double read(const json& obj, const char* key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  return number(obj.at(key), path + "." + key);
}

DriveField parse_drive(const json& obj, const std::string& path, DriveField d) {
  check_keys(obj, path, {"Omega", "Delta", "theta"});
  d.rabi_MHz = read(obj, "Omega", path, d.rabi_MHz);
  d.detuning_MHz = read(obj, "Delta", path, d.detuning_MHz);
  d.local_phase_rad = read(obj, "theta", path, d.local_phase_rad);
  if (d.rabi_MHz < 0.0) fail(path + ".Omega", "must be >= 0");
  if (d.detuning_MHz == 0.0) fail(path + ".Delta", "must be nonzero");
  return d;
}

WaveguideMode parse_mode(const json& obj, const std::string& path, WaveguideMode m) {
  check_keys(obj, path, {"Gamma", "phi"});
  m.decay_MHz = read(obj, "Gamma", path, m.decay_MHz);
  m.propagation_phase_rad = read(obj, "phi", path, m.propagation_phase_rad);
  if (m.decay_MHz < 0.0) fail(path + ".Gamma", "must be >= 0");
  return m;
}

bool family_has(ModelFamily family, const std::string& name) {
  if (name == "theta2" || name == "phi_b" || name == "Omega_c2") return family != ModelFamily::A;
  return true;
}

SweepAxis parse_axis(const json& obj, const std::string& path, ModelFamily family) {
  check_keys(obj, path, {"name", "start", "stop", "count", "also"});
  SweepAxis axis;
  if (!obj.contains("name") || !obj.at("name").is_string()) fail(path + ".name", "required string");
  axis.name = obj.at("name").get<std::string>();
  const auto& names = axis_names();
  auto check_name = [&](const std::string& n, const std::string& where) {
    reject_derived(where, n);
    if (std::find(names.begin(), names.end(), n) == names.end()) {
      std::string list;
      for (const auto& a : names) list += (list.empty() ? "" : ", ") + a;
      fail(where, "unknown sweep parameter '" + n + "' (allowed: " + list + ")");
    }
    if (!family_has(family, n))
      fail(where, "parameter '" + n + "' does not exist in model " + std::string(to_string(family)));
  };
  check_name(axis.name, path + ".name");
  if (!obj.contains("start")) fail(path + ".start", "required");
  if (!obj.contains("stop")) fail(path + ".stop", "required");
  axis.start = number(obj.at("start"), path + ".start");
  axis.stop = number(obj.at("stop"), path + ".stop");
  if (obj.contains("count")) {
    const auto& c = obj.at("count");
    if (!c.is_number_integer()) fail(path + ".count", "must be an integer");
    const auto n = c.get<long long>();
    if (n < 2) fail(path + ".count", "must be >= 2, got " + std::to_string(n));
    if (n > 10'000'000) fail(path + ".count", "must be <= 10000000");
    axis.count = static_cast<int>(n);
  }
  if (obj.contains("also")) {
    const auto& also = obj.at("also");
    if (!also.is_array()) fail(path + ".also", "expected an array of parameter names");
    for (std::size_t i = 0; i < also.size(); ++i) {
      const std::string where = path + ".also[" + std::to_string(i) + "]";
      if (!also[i].is_string()) fail(where, "expected a string");
      const std::string n = also[i].get<std::string>();
      check_name(n, where);
      if (n == axis.name) fail(where, "duplicates the axis parameter");
      axis.also.push_back(n);
    }
  }
  return axis;
}

}  // namespace

double SweepAxis::value(int index) const {
  if (index == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(count - 1);
}

const std::vector<std::string>& axis_names() {
  static const std::vector<std::string> names = {"delta_ka", "theta1",   "theta2",   "phi_a", "phi_b",
                                                 "Delta_c1", "Omega_c1", "Omega_c2", "gamma", "Lambda"};
  return names;
}

std::vector<std::string> describe_outputs(ModelFamily family) {
  std::vector<std::string> out;
  auto add = [&](std::initializer_list<const char*> observables, std::initializer_list<const char*> routes) {
    for (const char* o : observables)
      for (const char* r : routes) out.push_back(std::string(o) + "_" + r);
  };
  switch (family) {
    case ModelFamily::A:
      add({"T12", "T21", "I"}, {"full", "eff", "effsolve", "cont", "cont_printed"});
      add({"R11", "R22"}, {"full", "effsolve"});
      break;
    case ModelFamily::B:
      add({"S11", "S12", "S13", "S14", "Sconv"}, {"full", "eff", "effsolve"});
      break;
    case ModelFamily::C:
      add({"P11", "P12", "P13", "P14", "P22", "P21", "P24", "P23", "P1conv", "P2conv"},
          {"full", "eff", "effsolve"});
      break;
  }
  return out;
}

SweepSpec parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

SweepSpec parse_config(const json& doc) {
  check_keys(doc, "", {"model", "params", "axis1", "axis2", "outputs"});
  SweepSpec spec;

  if (!doc.contains("model") || !doc.at("model").is_string()) fail("model", "required: \"A\", \"B\" or \"C\"");
  const std::string model = doc.at("model").get<std::string>();
  if (model == "A") spec.family = ModelFamily::A;
  else if (model == "B") spec.family = ModelFamily::B;
  else if (model == "C") spec.family = ModelFamily::C;
  else fail("model", "expected \"A\", \"B\" or \"C\", got \"" + model + "\"");

  const json params = doc.contains("params") ? doc.at("params") : json::object();
  check_keys(params, "params",
             {"gamma", "V6", "delta_ka", "Lambda", "drive1", "drive2", "mode_a", "mode_b"});
  ScatterParams& p = spec.params;
  p.gamma_MHz = read(params, "gamma", "params", p.gamma_MHz);
  if (p.gamma_MHz < 0.0) fail("params.gamma", "must be >= 0");
  p.vdw_shift_MHz = read(params, "V6", "params", p.vdw_shift_MHz);
  p.delta_ka_MHz = read(params, "delta_ka", "params", p.delta_ka_MHz);
  spec.lambda = read(params, "Lambda", "params", spec.lambda);
  if (!(spec.lambda > 0.0)) fail("params.Lambda", "must be > 0");
  if (params.contains("drive1")) p.drive1 = parse_drive(params.at("drive1"), "params.drive1", p.drive1);
  if (params.contains("mode_a")) p.mode_a = parse_mode(params.at("mode_a"), "params.mode_a", p.mode_a);

  if (spec.family == ModelFamily::A) {
    if (params.contains("drive2")) fail("params.drive2", "model A has a single drive");
    if (params.contains("mode_b")) fail("params.mode_b", "model A has a single waveguide mode");
  } else {
    DriveField d2{p.drive1.rabi_MHz, -p.drive1.detuning_MHz, 0.0};
    if (params.contains("drive2")) {
      const auto& obj = params.at("drive2");
      if (obj.is_object() && obj.contains("Delta")) spec.delta_c2_follows = false;
      d2 = parse_drive(obj, "params.drive2", d2);
    }
    p.drive2 = d2;
    p.mode_b = params.contains("mode_b") ? parse_mode(params.at("mode_b"), "params.mode_b", WaveguideMode{})
                                         : WaveguideMode{};
  }

  if (!doc.contains("axis1")) fail("axis1", "required");
  spec.axis1 = parse_axis(doc.at("axis1"), "axis1", spec.family);
  if (doc.contains("axis2")) {
    spec.axis2 = parse_axis(doc.at("axis2"), "axis2", spec.family);
    auto touches = [](const SweepAxis& a, const std::string& n) {
      return a.name == n || std::find(a.also.begin(), a.also.end(), n) != a.also.end();
    };
    for (const auto& n : axis_names()) {
      if (touches(spec.axis1, n) && touches(*spec.axis2, n))
        fail("axis2", "parameter '" + n + "' is already driven by axis1");
    }
  }

  if (!doc.contains("outputs") || !doc.at("outputs").is_array() || doc.at("outputs").empty())
    fail("outputs", "required non-empty array of column names");
  const auto allowed = describe_outputs(spec.family);
  std::set<std::string> seen;
  const auto& outputs = doc.at("outputs");
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const std::string where = "outputs[" + std::to_string(i) + "]";
    if (!outputs[i].is_string()) fail(where, "expected a string");
    const std::string name = outputs[i].get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(where, "unknown output '" + name + "' for model " + model + " (allowed: " + list + ")");
    }
    if (!seen.insert(name).second) fail(where, "duplicate output '" + name + "'");
    spec.outputs.push_back(name);
  }

  try {
    validate(spec.params, spec.family);
  } catch (const std::invalid_argument& e) {
    fail("params", e.what());
  }
  return spec;
}

namespace {

json axis_json(const SweepAxis& a) {
  return {{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}, {"also", a.also}};
}

json drive_json(const DriveField& d) {
  return {{"Omega", d.rabi_MHz}, {"Delta", d.detuning_MHz}, {"theta", d.local_phase_rad}};
}

json mode_json(const WaveguideMode& m) { return {{"Gamma", m.decay_MHz}, {"phi", m.propagation_phase_rad}}; }

}  // namespace

json SweepSpec::resolved() const {
  json p = {{"gamma", params.gamma_MHz},
            {"V6", params.vdw_shift_MHz},
            {"delta_ka", params.delta_ka_MHz},
            {"Lambda", lambda},
            {"drive1", drive_json(params.drive1)},
            {"mode_a", mode_json(params.mode_a)}};
  if (params.drive2) {
    p["drive2"] = drive_json(*params.drive2);
    // Omitted so that re-reading the document keeps Delta_c2 tied to -Delta_c1.
    if (delta_c2_follows) p["drive2"].erase("Delta");
  }
  if (params.mode_b) p["mode_b"] = mode_json(*params.mode_b);
  json doc = {{"model", std::string(to_string(family))}, {"params", p}, {"axis1", axis_json(axis1)}};
  if (axis2) doc["axis2"] = axis_json(*axis2);
  doc["outputs"] = outputs;
  return doc;
}

}  // namespace giantscatter
