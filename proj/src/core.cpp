#include "giantscatter/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace giantscatter {

const DriveField& ScatterParams::second_drive() const {
  if (!drive2) throw std::invalid_argument("model requires drive2");
  return *drive2;
}

const WaveguideMode& ScatterParams::second_mode() const {
  if (!mode_b) throw std::invalid_argument("model requires mode_b");
  return *mode_b;
}

Port port_from_number(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("port must be 1..4, got " + std::to_string(n));
  return static_cast<Port>(n);
}

double PortProbabilities::to_port(Port in, Port out) const {
  if (in != Port::p1 && in != Port::p2)
    throw std::invalid_argument("incidence must be port 1 or 2");
  const bool left = in == Port::p1;
  switch (out) {
    case Port::p1: return left ? reflection : transmission;
    case Port::p2: return left ? transmission : reflection;
    case Port::p3: return left ? backward : forward;
    case Port::p4: return left ? forward : backward;
  }
  return 0.0;
}

ModelFamily family_of(ModelKind kind) {
  switch (kind) {
    case ModelKind::A_full:
    case ModelKind::A_eff:
      return ModelFamily::A;
    case ModelKind::B_full:
    case ModelKind::B_eff:
      return ModelFamily::B;
    case ModelKind::C_full:
    case ModelKind::C_eff:
      return ModelFamily::C;
  }
  return ModelFamily::A;
}

bool is_effective(ModelKind kind) {
  return kind == ModelKind::A_eff || kind == ModelKind::B_eff || kind == ModelKind::C_eff;
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::A_full: return "A_full";
    case ModelKind::A_eff: return "A_eff";
    case ModelKind::B_full: return "B_full";
    case ModelKind::B_eff: return "B_eff";
    case ModelKind::C_full: return "C_full";
    case ModelKind::C_eff: return "C_eff";
  }
  return "?";
}

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::A: return "A";
    case ModelFamily::B: return "B";
    case ModelFamily::C: return "C";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (auto kind : {ModelKind::A_full, ModelKind::A_eff, ModelKind::B_full, ModelKind::B_eff,
                    ModelKind::C_full, ModelKind::C_eff}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown model kind '" + std::string(text) + "'");
}

double effective_rate(double gamma_MHz, double rabi_MHz, double detuning_MHz) {
  if (detuning_MHz == 0.0) throw std::domain_error("detuning must be nonzero");
  return gamma_MHz * rabi_MHz * rabi_MHz / (detuning_MHz * detuning_MHz);
}

double effective_coupling(double gamma_MHz, double rabi_MHz, double detuning_MHz) {
  if (detuning_MHz == 0.0) throw std::domain_error("detuning must be nonzero");
  return -std::sqrt(gamma_MHz) * rabi_MHz / detuning_MHz;
}

namespace {

double shift_term(const DriveField& d) {
  if (d.detuning_MHz == 0.0) throw std::domain_error("detuning must be nonzero");
  return d.rabi_MHz * d.rabi_MHz / d.detuning_MHz;
}

}  // namespace

double lamb_shift(ModelFamily family, const DriveField& drive1,
                  const std::optional<DriveField>& drive2) {
  switch (family) {
    case ModelFamily::A:
      return 2.0 * shift_term(drive1);
    case ModelFamily::B:
      if (!drive2) throw std::invalid_argument("model B requires drive2");
      return shift_term(drive1) + shift_term(*drive2);
    case ModelFamily::C:
      if (!drive2) throw std::invalid_argument("model C requires drive2");
      return 2.0 * shift_term(drive1) + 2.0 * shift_term(*drive2);
  }
  return 0.0;
}

EffectiveRates effective_rates(ModelFamily family, const ScatterParams& params) {
  EffectiveRates rates;
  rates.upsilon_a_MHz = effective_rate(params.mode_a.decay_MHz, params.drive1.rabi_MHz,
                                       params.drive1.detuning_MHz);
  if (family != ModelFamily::A) {
    const auto& d2 = params.second_drive();
    rates.upsilon_b_MHz =
        effective_rate(params.second_mode().decay_MHz, d2.rabi_MHz, d2.detuning_MHz);
  }
  rates.lamb_shift_MHz = lamb_shift(family, params.drive1, params.drive2);
  return rates;
}

double probe_detuning_b(const ScatterParams& params) {
  return params.delta_ka_MHz + params.drive1.detuning_MHz - params.second_drive().detuning_MHz;
}

double normalize_phase(double phase_rad) {
  double wrapped = std::fmod(phase_rad, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a value just below a multiple of 2 pi can round up to 2 pi
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

ScatterParams normalized(const ScatterParams& params) {
  ScatterParams out = params;
  out.drive1.local_phase_rad = normalize_phase(out.drive1.local_phase_rad);
  out.mode_a.propagation_phase_rad = normalize_phase(out.mode_a.propagation_phase_rad);
  if (out.drive2) out.drive2->local_phase_rad = normalize_phase(out.drive2->local_phase_rad);
  if (out.mode_b) out.mode_b->propagation_phase_rad = normalize_phase(out.mode_b->propagation_phase_rad);
  return out;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_drive(const DriveField& d, const std::string& name) {
  require(std::isfinite(d.rabi_MHz) && d.rabi_MHz >= 0.0, name + ".rabi_MHz must be finite and >= 0");
  require(std::isfinite(d.detuning_MHz), name + ".detuning_MHz must be finite");
  require(std::isfinite(d.local_phase_rad), name + ".local_phase_rad must be finite");
}

void check_mode(const WaveguideMode& m, const std::string& name) {
  require(std::isfinite(m.decay_MHz) && m.decay_MHz >= 0.0, name + ".decay_MHz must be finite and >= 0");
  require(std::isfinite(m.propagation_phase_rad), name + ".propagation_phase_rad must be finite");
}

}  // namespace

void validate(const ScatterParams& params, ModelFamily family) {
  require(std::isfinite(params.gamma_MHz) && params.gamma_MHz >= 0.0,
          "gamma_MHz must be finite and >= 0");
  require(std::isfinite(params.delta_ka_MHz), "delta_ka_MHz must be finite");
  require(std::isfinite(params.vdw_shift_MHz), "vdw_shift_MHz must be finite");
  check_drive(params.drive1, "drive1");
  check_mode(params.mode_a, "mode_a");
  if (family != ModelFamily::A) {
    require(params.drive2.has_value(), "model " + std::string(to_string(family)) + " requires drive2");
    require(params.mode_b.has_value(), "model " + std::string(to_string(family)) + " requires mode_b");
    check_drive(*params.drive2, "drive2");
    check_mode(*params.mode_b, "mode_b");
  }
}

bool loop_closed(const ScatterParams& params) {
  if (!params.drive2) return false;
  const double d1 = params.drive1.detuning_MHz;
  const double d2 = params.drive2->detuning_MHz;
  return std::abs(d1 + d2) <= 1e-9 * std::max(1.0, std::abs(d1));
}

std::vector<std::string> regime_warnings(const ScatterParams& params, ModelFamily family) {
  std::vector<std::string> out;
  auto check = [&](const DriveField& d, const char* name) {
    std::ostringstream msg;
    if (std::abs(d.detuning_MHz) > 0.1 * std::abs(params.vdw_shift_MHz)) {
      msg << name << ": |Delta_c| is not small against V6";
      out.push_back(msg.str());
      msg.str("");
    }
    if (std::abs(d.detuning_MHz) < 10.0 * d.rabi_MHz) {
      msg << name << ": |Delta_c| is not large against Omega (adiabatic elimination unreliable)";
      out.push_back(msg.str());
    }
  };
  check(params.drive1, "drive1");
  if (family != ModelFamily::A && params.drive2) {
    check(*params.drive2, "drive2");
    if (!loop_closed(params)) out.emplace_back("Delta_c2 != -Delta_c1: two-photon loop not closed");
    if (params.drive1.rabi_MHz != params.drive2->rabi_MHz)
      out.emplace_back("Omega_c1 != Omega_c2: printed conversion formulas omit the residual Lamb shift");
  }
  return out;
}

}  // namespace giantscatter
