#pragma once

// Domain types shared by every scattering route.
//
// Units: all rates and detunings are in MHz, all phases in radians. The
// waveguide group velocity is absorbed into the rates (v_g = 1), so a bare
// coupling strength is g = sqrt(Gamma) and an effective one is
// xi = -g * Omega / Delta with Upsilon = xi^2.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace giantscatter {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when a linear system or quadrature cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coherent control field acting on the upper (|r⟩ → |rr⟩) transitions.
struct DriveField {
  double rabi_MHz = 1.0;
  double detuning_MHz = 30.0;
  double local_phase_rad = 0.0;  ///< phase difference between the two atoms
};

struct WaveguideMode {
  double decay_MHz = 1.0;              ///< bare decay rate Gamma into the mode
  double propagation_phase_rad = kPi / 2;  ///< k d, constant (Markovian)
};

/// Everything needed for one scattering evaluation.
///
/// The probe detuning of mode b is not stored; it follows from energy
/// conservation (see `probe_detuning_b`).
struct ScatterParams {
  double gamma_MHz = 0.001;
  double vdw_shift_MHz = 20000.0;  ///< recorded only; enters no formula
  DriveField drive1{};
  std::optional<DriveField> drive2{};
  WaveguideMode mode_a{};
  std::optional<WaveguideMode> mode_b{};
  double delta_ka_MHz = -30.0;

  const DriveField& second_drive() const;
  const WaveguideMode& second_mode() const;
};

enum class ModelFamily { A, B, C };

enum class ModelKind { A_full, A_eff, B_full, B_eff, C_full, C_eff };

ModelFamily family_of(ModelKind kind);
bool is_effective(ModelKind kind);
std::string_view to_string(ModelKind kind);
std::string_view to_string(ModelFamily family);
ModelKind parse_model_kind(std::string_view text);

/// Waveguide ends. Mode a: 1 = left end, 2 = right end. Mode b: 3 = left, 4 = right.
enum class Port { p1 = 1, p2 = 2, p3 = 3, p4 = 4 };

inline int port_number(Port p) { return static_cast<int>(p); }
Port port_from_number(int n);

/// Outcome probabilities for one incident port, named by geometry rather
/// than port number. For incidence at port 1 these are P1->1, P1->2, P1->3,
/// P1->4; for port 2 they are P2->2, P2->1, P2->4, P2->3.
struct PortProbabilities {
  double reflection = 0.0;
  double transmission = 0.0;
  double backward = 0.0;  ///< converted into mode b, travelling back toward the source side
  double forward = 0.0;   ///< converted into mode b, travelling onward

  double total_conversion() const { return backward + forward; }
  double sum() const { return reflection + transmission + backward + forward; }
  /// Probability of leaving through `out` for a photon incident at `in` (port 1 or 2).
  double to_port(Port in, Port out) const;
};

struct EffectiveRates {
  double upsilon_a_MHz = 0.0;
  double upsilon_b_MHz = 0.0;
  double lamb_shift_MHz = 0.0;
};

/// Gamma * Omega^2 / Delta^2. Throws std::domain_error for Delta == 0.
double effective_rate(double gamma_MHz, double rabi_MHz, double detuning_MHz);

/// Signed effective coupling -sqrt(Gamma) * Omega / Delta.
double effective_coupling(double gamma_MHz, double rabi_MHz, double detuning_MHz);

/// Energy shift of |r1 r2⟩ produced by eliminating the single-excitation
/// states. It is subtracted from the bare |r1 r2⟩ energy, so it appears with
/// a plus sign next to delta_ka + Delta_c1 in every denominator.
///   A: 2 W1^2/D1      B: W1^2/D1 + W2^2/D2      C: 2 W1^2/D1 + 2 W2^2/D2
double lamb_shift(ModelFamily family, const DriveField& drive1,
                  const std::optional<DriveField>& drive2 = std::nullopt);

EffectiveRates effective_rates(ModelFamily family, const ScatterParams& params);

/// delta_kb = delta_ka + Delta_c1 - Delta_c2; equals -delta_ka on the
/// two-photon resonance when Delta_c2 = -Delta_c1.
double probe_detuning_b(const ScatterParams& params);

/// Wraps a phase into [0, 2 pi).
double normalize_phase(double phase_rad);
ScatterParams normalized(const ScatterParams& params);

/// Throws std::invalid_argument on negative rates, non-finite values or
/// missing drive/mode for the given family.
void validate(const ScatterParams& params, ModelFamily family);

/// Regime checks that do not block a computation.
std::vector<std::string> regime_warnings(const ScatterParams& params, ModelFamily family);

/// True when |Delta_c1 + Delta_c2| is negligible against |Delta_c1|.
bool loop_closed(const ScatterParams& params);

}  // namespace giantscatter
