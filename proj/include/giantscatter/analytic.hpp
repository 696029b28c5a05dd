#pragma once

// Closed-form spectra of the effective (adiabatically eliminated) models.

#include <map>
#include <string>

#include "giantscatter/core.hpp"

namespace giantscatter {

/// Transmission direction in mode a: port 1 -> 2 or port 2 -> 1.
enum class Direction { right, left };

std::string_view to_string(Direction d);

/// delta_ka at which the effective model A is on two-photon resonance,
/// -Delta_c1 - 2 Omega_c1^2 / Delta_c1.
double resonance_delta_A(const ScatterParams& params);

/// Effective giant-atom transmissivity, Lamb shift included.
double t_eff_A(const ScatterParams& params, Direction direction);

/// Same quantity written as 1 - 2i Upsilon (1 + cos(phi -+ theta)) / D, the
/// form produced by propagating the incident amplitude in time. Algebraically
/// equal to `t_eff_A`; kept as an independent evaluation.
double t_eff_A_decay_form(const ScatterParams& params, Direction direction);

/// (T21 - T12) / (T21 + T12). Throws std::domain_error when both vanish.
double contrast_ratio(double t12, double t21);

/// Symmetric converter, incidence at port 1. The printed expressions carry no
/// Lamb shift; requires Delta_c2 = -Delta_c1 (std::invalid_argument otherwise).
PortProbabilities s_eff_B(const ScatterParams& params);

/// Asymmetric converter for incidence at port 1 or 2. Port 2 is port 1 with
/// theta1, theta2 negated. No Lamb shift; requires Delta_c2 = -Delta_c1.
PortProbabilities p_eff_C(const ScatterParams& params, Port incidence);

struct SpectrumPoint {
  double delta_ka_MHz = 0.0;
  std::map<std::string, double> values;
};

}  // namespace giantscatter
