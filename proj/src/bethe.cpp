#include "giantscatter/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace giantscatter {

using namespace std::complex_literals;

double ScatteringSolution::probability(Port out) const {
  auto it = probabilities.find(out);
  return it == probabilities.end() ? 0.0 : it->second;
}

double ScatteringSolution::total_probability() const {
  double sum = 0.0;
  for (const auto& [port, p] : probabilities) sum += p;
  return sum;
}

PortProbabilities ScatteringSolution::grouped() const {
  if (incidence != Port::p1 && incidence != Port::p2)
    throw std::invalid_argument("grouped view needs incidence at port 1 or 2");
  const bool left = incidence == Port::p1;
  PortProbabilities out;
  out.reflection = probability(left ? Port::p1 : Port::p2);
  out.transmission = probability(left ? Port::p2 : Port::p1);
  out.backward = probability(left ? Port::p3 : Port::p4);
  out.forward = probability(left ? Port::p4 : Port::p3);
  return out;
}

namespace {

// Unknown bookkeeping for one mode: index per region, -1 for a known value.
struct ModeLayout {
  std::vector<int> right;  // regions 0..n
  std::vector<int> left;
  Complex right_in{0.0};   // known R[0]
  Complex left_in{0.0};    // known L[n]
  Port left_port = Port::p1;
  Port right_port = Port::p2;
};

Port left_port_of(char name) { return name == 'a' ? Port::p1 : Port::p3; }
Port right_port_of(char name) { return name == 'a' ? Port::p2 : Port::p4; }

void check_topology(const CouplingTopology& topo) {
  if (topo.modes.empty()) throw std::invalid_argument("topology has no waveguide mode");
  bool seen_a = false, seen_b = false;
  for (const auto& m : topo.modes) {
    if (m.name != 'a' && m.name != 'b') throw std::invalid_argument("mode name must be 'a' or 'b'");
    bool& seen = m.name == 'a' ? seen_a : seen_b;
    if (seen) throw std::invalid_argument(std::string("duplicate mode '") + m.name + "'");
    seen = true;
    if (m.points.empty() || m.points.size() > 2)
      throw std::invalid_argument(std::string("mode '") + m.name + "' must have 1 or 2 coupling points");
    for (std::size_t i = 0; i < m.points.size(); ++i) {
      if (m.points[i] != 0 && m.points[i] != 1)
        throw std::invalid_argument("coupling point index must be 0 or 1");
      if (i > 0 && m.points[i] <= m.points[i - 1])
        throw std::invalid_argument("coupling points must be strictly ordered");
    }
  }
  const int n_levels = static_cast<int>(topo.levels.size());
  const int n_modes = static_cast<int>(topo.modes.size());
  for (const auto& c : topo.couplings) {
    if (c.mode < 0 || c.mode >= n_modes) throw std::invalid_argument("coupling names unknown mode");
    if (c.level < 0 || c.level >= n_levels) throw std::invalid_argument("coupling names unknown level");
    const auto& pts = topo.modes[c.mode].points;
    if (std::find(pts.begin(), pts.end(), c.point) == pts.end())
      throw std::invalid_argument("coupling point not declared on its mode");
  }
  for (const auto& d : topo.drives) {
    if (d.to < 0 || d.to >= n_levels || d.from < 0 || d.from >= n_levels || d.to == d.from)
      throw std::invalid_argument("drive coupling names invalid levels");
  }
}

}  // namespace

LinearSystem build_system(const CouplingTopology& topo, Port incidence) {
  check_topology(topo);

  bool incidence_found = false;
  for (const auto& m : topo.modes) {
    if (left_port_of(m.name) == incidence || right_port_of(m.name) == incidence) incidence_found = true;
  }
  if (!incidence_found)
    throw std::invalid_argument("incident port " + std::to_string(port_number(incidence)) +
                                " does not belong to the topology");

  LinearSystem sys;
  sys.incidence = incidence;

  // Unknown order per mode: interior right, interior left, left output, right output.
  std::vector<ModeLayout> layouts;
  for (const auto& m : topo.modes) {
    const std::size_t n = m.points.size();
    ModeLayout lay;
    lay.left_port = left_port_of(m.name);
    lay.right_port = right_port_of(m.name);
    lay.right.assign(n + 1, -1);
    lay.left.assign(n + 1, -1);
    const char upper = m.name == 'a' ? 'A' : 'B';
    for (std::size_t r = 1; r < n; ++r) {
      lay.right[r] = static_cast<int>(sys.labels.size());
      sys.labels.push_back(std::string(1, upper) + "_R");
    }
    for (std::size_t r = 1; r < n; ++r) {
      lay.left[r] = static_cast<int>(sys.labels.size());
      sys.labels.push_back(std::string(1, upper) + "_L");
    }
    lay.left[0] = static_cast<int>(sys.labels.size());
    sys.labels.push_back("out" + std::to_string(port_number(lay.left_port)));
    lay.right[n] = static_cast<int>(sys.labels.size());
    sys.labels.push_back("out" + std::to_string(port_number(lay.right_port)));
    if (incidence == lay.left_port) lay.right_in = 1.0;
    if (incidence == lay.right_port) lay.left_in = 1.0;
    layouts.push_back(std::move(lay));
  }
  const int first_level = static_cast<int>(sys.labels.size());
  for (const auto& lvl : topo.levels) sys.labels.push_back(lvl.label);

  const std::size_t n = sys.labels.size();
  sys.matrix.assign(n * n, Complex{0.0});
  sys.rhs.assign(n, Complex{0.0});

  std::size_t row = 0;
  auto add_right = [&](std::size_t r, const ModeLayout& lay, std::size_t region, Complex coef) {
    if (lay.right[region] >= 0) sys.at(r, lay.right[region]) += coef;
    else sys.rhs[r] -= coef * lay.right_in;
  };
  auto add_left = [&](std::size_t r, const ModeLayout& lay, std::size_t region, Complex coef) {
    if (lay.left[region] >= 0) sys.at(r, lay.left[region]) += coef;
    else sys.rhs[r] -= coef * lay.left_in;
  };

  // Jump conditions at each coupling point.
  for (std::size_t mi = 0; mi < topo.modes.size(); ++mi) {
    const auto& mode = topo.modes[mi];
    const auto& lay = layouts[mi];
    for (std::size_t j = 0; j < mode.points.size(); ++j) {
      const int point = mode.points[j];
      const Complex phase = std::exp(1i * (mode.phase_rad * point));
      // right-going: -i (R[j+1] - R[j]) e^{i phi s} + sum amp u = 0
      add_right(row, lay, j + 1, -1i * phase);
      add_right(row, lay, j, 1i * phase);
      // left-going: -i (L[j] - L[j+1]) e^{-i phi s} + sum amp u = 0
      add_left(row + 1, lay, j, -1i / phase);
      add_left(row + 1, lay, j + 1, 1i / phase);
      for (const auto& c : topo.couplings) {
        if (c.mode != static_cast<int>(mi) || c.point != point) continue;
        sys.at(row, first_level + c.level) += c.amplitude;
        sys.at(row + 1, first_level + c.level) += c.amplitude;
      }
      row += 2;
    }
  }

  // Level equations.
  for (std::size_t li = 0; li < topo.levels.size(); ++li) {
    const std::size_t r = row + li;
    sys.at(r, first_level + li) -= topo.levels[li].detuning;
    for (const auto& c : topo.couplings) {
      if (c.level != static_cast<int>(li)) continue;
      const auto& mode = topo.modes[c.mode];
      const auto& lay = layouts[c.mode];
      const auto j = static_cast<std::size_t>(
          std::find(mode.points.begin(), mode.points.end(), c.point) - mode.points.begin());
      const Complex phase = std::exp(1i * (mode.phase_rad * c.point));
      const Complex half = std::conj(c.amplitude) / 2.0;
      add_right(r, lay, j, half * phase);
      add_right(r, lay, j + 1, half * phase);
      add_left(r, lay, j, half / phase);
      add_left(r, lay, j + 1, half / phase);
    }
    for (const auto& d : topo.drives) {
      if (d.to == static_cast<int>(li)) sys.at(r, first_level + d.from) += d.amplitude;
      if (d.from == static_cast<int>(li)) sys.at(r, first_level + d.to) += std::conj(d.amplitude);
    }
  }
  return sys;
}

ScatteringSolution solve(const LinearSystem& system) {
  const auto n = static_cast<Eigen::Index>(system.size());
  Eigen::MatrixXcd a(n, n);
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i) = system.rhs[i];
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = system.at(i, j);
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  // Eigen's estimator divides by an exactly zero pivot and can report 1.
  const double pivot_ratio = lu.matrixLU().diagonal().cwiseAbs().minCoeff() /
                             std::max(lu.matrixLU().diagonal().cwiseAbs().maxCoeff(), 1e-300);
  const double rcond = pivot_ratio == 0.0 ? 0.0 : lu.rcond();
  if (!(rcond >= 1e-12)) {
    std::ostringstream msg;
    msg << "singular or ill-conditioned scattering system (rcond=" << rcond << ")";
    if (!system.context.empty()) msg << " at " << system.context;
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXcd x = lu.solve(b);
  const double bnorm = b.cwiseAbs().maxCoeff();
  const double residual = (a * x - b).cwiseAbs().maxCoeff() / (bnorm > 0.0 ? bnorm : 1.0);
  if (!(residual < 1e-10) || !x.allFinite()) {
    std::ostringstream msg;
    msg << "scattering solve residual " << residual << " exceeds 1e-10";
    if (!system.context.empty()) msg << " at " << system.context;
    throw NumericalError(msg.str());
  }

  ScatteringSolution sol;
  sol.incidence = system.incidence;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string& label = system.labels[i];
    const Complex v = x(i);
    if (label.rfind("out", 0) == 0) {
      const Port p = port_from_number(std::stoi(label.substr(3)));
      sol.port_amplitudes[p] = v;
      sol.probabilities[p] = std::norm(v);
    } else if (label.rfind("u_", 0) == 0) {
      sol.atomic_amplitudes[label] = v;
    } else {
      sol.segment_amplitudes[label] = v;
    }
  }
  return sol;
}

namespace {

std::string describe(ModelKind kind, const ScatterParams& p) {
  std::ostringstream s;
  s.precision(12);
  s << "model=" << to_string(kind) << " delta_ka=" << p.delta_ka_MHz
    << " Delta_c1=" << p.drive1.detuning_MHz << " Omega_c1=" << p.drive1.rabi_MHz
    << " theta1=" << p.drive1.local_phase_rad << " Gamma_a=" << p.mode_a.decay_MHz
    << " phi_a=" << p.mode_a.propagation_phase_rad << " gamma=" << p.gamma_MHz;
  if (family_of(kind) != ModelFamily::A && p.drive2 && p.mode_b) {
    s << " Delta_c2=" << p.drive2->detuning_MHz << " Omega_c2=" << p.drive2->rabi_MHz
      << " theta2=" << p.drive2->local_phase_rad << " Gamma_b=" << p.mode_b->decay_MHz
      << " phi_b=" << p.mode_b->propagation_phase_rad;
  }
  return s.str();
}

Complex phase_of(double rad) { return std::exp(1i * rad); }

}  // namespace

CouplingTopology make_topology(ModelKind kind, const ScatterParams& p) {
  const ModelFamily family = family_of(kind);
  validate(p, family);

  const double gamma = p.gamma_MHz;
  const double delta = p.delta_ka_MHz;
  const DriveField& d1 = p.drive1;
  CouplingTopology topo;

  const bool two_point_a = family != ModelFamily::B;
  topo.modes.push_back({'a', p.mode_a.propagation_phase_rad,
                        two_point_a ? std::vector<int>{0, 1} : std::vector<int>{0}});
  if (family == ModelFamily::B) topo.modes.push_back({'b', p.second_mode().propagation_phase_rad, {1}});
  if (family == ModelFamily::C) topo.modes.push_back({'b', p.second_mode().propagation_phase_rad, {0, 1}});

  // |r1 r2⟩ in the frame of drive 1: delta_ka + Delta_c1 (+ shift) + 2 i gamma.
  const Complex pair_detuning = delta + d1.detuning_MHz + 2.0i * gamma;

  if (is_effective(kind)) {
    const double shift = lamb_shift(family, p.drive1, p.drive2);
    topo.levels.push_back({"u_d", pair_detuning + shift});
    const double xi_a = effective_coupling(p.mode_a.decay_MHz, d1.rabi_MHz, d1.detuning_MHz);
    topo.couplings.push_back({0, 0, 0, xi_a});
    if (two_point_a) topo.couplings.push_back({0, 1, 0, xi_a * phase_of(d1.local_phase_rad)});
    if (family != ModelFamily::A) {
      const DriveField& d2 = p.second_drive();
      const double xi_b = effective_coupling(p.second_mode().decay_MHz, d2.rabi_MHz, d2.detuning_MHz);
      if (family == ModelFamily::C) topo.couplings.push_back({1, 0, 0, xi_b});
      topo.couplings.push_back({1, 1, 0, xi_b * phase_of(d2.local_phase_rad)});
    }
    return topo;
  }

  // Full models keep the single-excitation states. States reached by
  // absorbing a mode-a photon sit at delta_ka; states that emit into mode b
  // belong to the sector with one drive-1 photon absorbed and one drive-2
  // photon emitted, at delta_kb.
  const double g_a = std::sqrt(p.mode_a.decay_MHz);
  const Complex single_a = delta + 1.0i * gamma;
  switch (family) {
    case ModelFamily::A: {
      topo.levels = {{"u_b", single_a}, {"u_c", single_a}, {"u_d", pair_detuning}};
      topo.couplings = {{0, 0, 0, g_a}, {0, 1, 1, g_a}};
      topo.drives = {{0, 2, d1.rabi_MHz}, {1, 2, d1.rabi_MHz * phase_of(d1.local_phase_rad)}};
      break;
    }
    case ModelFamily::B: {
      const DriveField& d2 = p.second_drive();
      const double g_b = std::sqrt(p.second_mode().decay_MHz);
      const Complex single_b = probe_detuning_b(p) + 1.0i * gamma;
      topo.levels = {{"u_b", single_a}, {"u_c", single_b}, {"u_d", pair_detuning}};
      topo.couplings = {{0, 0, 0, g_a}, {1, 1, 1, g_b}};
      topo.drives = {{0, 2, d1.rabi_MHz}, {1, 2, d2.rabi_MHz * phase_of(d2.local_phase_rad)}};
      break;
    }
    case ModelFamily::C: {
      const DriveField& d2 = p.second_drive();
      const double g_b = std::sqrt(p.second_mode().decay_MHz);
      const Complex single_b = probe_detuning_b(p) + 1.0i * gamma;
      topo.levels = {{"u_b", single_a}, {"u_c", single_a}, {"u_b2", single_b}, {"u_c2", single_b},
                     {"u_d", pair_detuning}};
      topo.couplings = {{0, 0, 0, g_a}, {0, 1, 1, g_a}, {1, 0, 2, g_b}, {1, 1, 3, g_b}};
      topo.drives = {{0, 4, d1.rabi_MHz},
                     {1, 4, d1.rabi_MHz * phase_of(d1.local_phase_rad)},
                     {2, 4, d2.rabi_MHz},
                     {3, 4, d2.rabi_MHz * phase_of(d2.local_phase_rad)}};
      break;
    }
  }
  return topo;
}

ScatteringSolution scatter(ModelKind kind, const ScatterParams& params, Port incidence) {
  LinearSystem sys = build_system(make_topology(kind, params), incidence);
  sys.context = describe(kind, params);
  return solve(sys);
}

}  // namespace giantscatter
