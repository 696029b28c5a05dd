#pragma once

// Stationary single-photon scattering by the Bethe-ansatz route.
//
// A scattering configuration is described declaratively by a
// CouplingTopology: waveguide modes with one or two coupling points
// (x = 0 and x = d), atomic levels with complex detunings, photon-level
// couplings and level-level drive couplings. `build_system` turns a topology
// and an incident port into the dense boundary-condition system; `solve`
// returns the labelled amplitudes.
//
// Field values at a coupling point are taken as the mean of the two one-sided
// limits of the piecewise plane-wave ansatz.

#include <map>
#include <string>
#include <vector>

#include "giantscatter/core.hpp"

namespace giantscatter {

struct ModeSpec {
  char name = 'a';              ///< 'a' owns ports 1/2, 'b' owns ports 3/4
  double phase_rad = 0.0;       ///< propagation phase k d between the two points
  std::vector<int> points;      ///< sorted subset of {0, 1}; 0 is x=0, 1 is x=d
};

struct LevelSpec {
  std::string label;
  Complex detuning;  ///< E - E_level, including -i * loss; the row reads ... - detuning * u = 0
};

/// Emission amplitude of `level` into `mode` at `point`. Absorption uses the
/// complex conjugate.
struct PhotonCoupling {
  int mode = 0;
  int point = 0;
  int level = 0;
  Complex amplitude;
};

/// Drive coupling: row `to` gains amplitude * u[from], row `from` gains conj(amplitude) * u[to].
struct DriveCoupling {
  int to = 0;
  int from = 0;
  Complex amplitude;
};

struct CouplingTopology {
  std::vector<ModeSpec> modes;
  std::vector<LevelSpec> levels;
  std::vector<PhotonCoupling> couplings;
  std::vector<DriveCoupling> drives;
};

struct LinearSystem {
  std::vector<Complex> matrix;  ///< row-major N x N
  std::vector<Complex> rhs;
  std::vector<std::string> labels;
  Port incidence = Port::p1;
  std::string context;  ///< parameter summary quoted in solver diagnostics

  std::size_t size() const { return rhs.size(); }
  Complex& at(std::size_t row, std::size_t col) { return matrix[row * size() + col]; }
  Complex at(std::size_t row, std::size_t col) const { return matrix[row * size() + col]; }
};

struct ScatteringSolution {
  Port incidence = Port::p1;
  std::map<Port, Complex> port_amplitudes;
  std::map<std::string, Complex> segment_amplitudes;
  std::map<std::string, Complex> atomic_amplitudes;
  std::map<Port, double> probabilities;

  double probability(Port out) const;
  double total_probability() const;
  /// Reflection/transmission/conversion view; requires incidence at port 1 or 2.
  PortProbabilities grouped() const;
};

/// Throws std::invalid_argument for an inconsistent topology or an incident
/// port that does not belong to one of its modes.
LinearSystem build_system(const CouplingTopology& topology, Port incidence);

/// Dense LU with partial pivoting. Throws NumericalError when the reciprocal
/// condition estimate drops below 1e-12 or the relative residual exceeds 1e-10.
ScatteringSolution solve(const LinearSystem& system);

/// Topology of one of the six supported models at the given parameters.
CouplingTopology make_topology(ModelKind kind, const ScatterParams& params);

ScatteringSolution scatter(ModelKind kind, const ScatterParams& params, Port incidence);

}  // namespace giantscatter
