#include "giantscatter/analytic.hpp"

#include <cmath>

namespace giantscatter {

using namespace std::complex_literals;

std::string_view to_string(Direction d) { return d == Direction::right ? "1->2" : "2->1"; }

double resonance_delta_A(const ScatterParams& params) {
  const auto& d = params.drive1;
  return -d.detuning_MHz - lamb_shift(ModelFamily::A, d);
}

namespace {

// delta_ka + Delta_c1 + 2 Omega^2/Delta + 2 i gamma
Complex shifted_detuning_A(const ScatterParams& p) {
  return p.delta_ka_MHz + p.drive1.detuning_MHz + lamb_shift(ModelFamily::A, p.drive1) +
         2.0i * p.gamma_MHz;
}

Complex giant_self_energy(double upsilon, double phi, double theta) {
  return 2.0i * upsilon * (1.0 + std::exp(1i * phi) * std::cos(theta));
}

void require_closed_loop(const ScatterParams& p, const char* what) {
  if (!loop_closed(p))
    throw std::invalid_argument(std::string(what) + " requires Delta_c2 = -Delta_c1 (two-photon loop not closed)");
}

}  // namespace

double t_eff_A(const ScatterParams& params, Direction direction) {
  validate(params, ModelFamily::A);
  const double ups = effective_rate(params.mode_a.decay_MHz, params.drive1.rabi_MHz,
                                    params.drive1.detuning_MHz);
  const double phi = params.mode_a.propagation_phase_rad;
  const double theta = params.drive1.local_phase_rad;
  const double sign = direction == Direction::right ? 1.0 : -1.0;
  const Complex x = shifted_detuning_A(params);
  const Complex num = x - 2.0 * ups * std::exp(1i * (sign * theta)) * std::sin(phi);
  const Complex den = x + giant_self_energy(ups, phi, theta);
  return std::norm(num / den);
}

double t_eff_A_decay_form(const ScatterParams& params, Direction direction) {
  validate(params, ModelFamily::A);
  const double ups = effective_rate(params.mode_a.decay_MHz, params.drive1.rabi_MHz,
                                    params.drive1.detuning_MHz);
  const double phi = params.mode_a.propagation_phase_rad;
  const double theta = params.drive1.local_phase_rad;
  const double sign = direction == Direction::right ? 1.0 : -1.0;
  const Complex den = shifted_detuning_A(params) + giant_self_energy(ups, phi, theta);
  return std::norm(1.0 - 2.0i * ups * (1.0 + std::cos(phi - sign * theta)) / den);
}

double contrast_ratio(double t12, double t21) {
  const double total = t12 + t21;
  if (total == 0.0) throw std::domain_error("contrast ratio undefined when T12 = T21 = 0");
  return (t21 - t12) / total;
}

PortProbabilities s_eff_B(const ScatterParams& params) {
  validate(params, ModelFamily::B);
  require_closed_loop(params, "symmetric converter formula");
  const auto rates = effective_rates(ModelFamily::B, params);
  const double ua = rates.upsilon_a_MHz;
  const double ub = rates.upsilon_b_MHz;
  const double theta2 = params.second_drive().local_phase_rad;
  const double phi_b = params.second_mode().propagation_phase_rad;
  const Complex x = params.delta_ka_MHz + params.drive1.detuning_MHz + 2.0i * params.gamma_MHz;
  const Complex den = 1.0i * (ua + ub) + x;
  const double cross = std::sqrt(ua * ub);
  PortProbabilities out;
  out.reflection = std::norm(-1.0i * ua / den);
  out.transmission = std::norm((1.0i * ub + x) / den);
  out.backward = std::norm(-1.0i * cross * std::exp(1i * (theta2 + phi_b)) / den);
  out.forward = std::norm(-1.0i * cross * std::exp(1i * (theta2 - phi_b)) / den);
  return out;
}

PortProbabilities p_eff_C(const ScatterParams& params, Port incidence) {
  validate(params, ModelFamily::C);
  require_closed_loop(params, "asymmetric converter formula");
  if (incidence != Port::p1 && incidence != Port::p2)
    throw std::invalid_argument("asymmetric converter formula takes incidence at port 1 or 2");
  const auto rates = effective_rates(ModelFamily::C, params);
  const double ua = rates.upsilon_a_MHz;
  const double ub = rates.upsilon_b_MHz;
  const double sign = incidence == Port::p1 ? 1.0 : -1.0;
  const double t1 = sign * params.drive1.local_phase_rad;
  const double t2 = sign * params.second_drive().local_phase_rad;
  const double pa = params.mode_a.propagation_phase_rad;
  const double pb = params.second_mode().propagation_phase_rad;

  const Complex x = params.delta_ka_MHz + params.drive1.detuning_MHz + 2.0i * params.gamma_MHz;
  const Complex self_b = giant_self_energy(ub, pb, t2);
  const Complex den = x + giant_self_energy(ua, pa, t1) + self_b;
  const Complex ea = std::exp(1i * pa);
  const Complex in_a = 1.0 + ea * std::exp(-1i * t1);
  const double cross = std::sqrt(ua * ub);

  PortProbabilities out;
  out.reflection = std::norm(-1.0i * ua * (1.0 + ea * std::exp(1i * t1)) * in_a / den);
  out.transmission = std::norm((x - 2.0 * ua * std::exp(1i * t1) * std::sin(pa) + self_b) / den);
  out.backward = std::norm(-1.0i * cross * (1.0 + std::exp(1i * (pb + t2))) * in_a / den);
  out.forward = std::norm(-1.0i * cross * (1.0 + std::exp(1i * (t2 - pb))) * in_a / den);
  return out;
}

}  // namespace giantscatter
