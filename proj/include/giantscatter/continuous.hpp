#pragma once

// Giant atom with finite-width coupling regions.
//
// Each coupling point is replaced by the profile
//   nu(phi) = (sqrt(Upsilon) / Lambda) exp(-2 |phi - center| / Lambda),
// the first centred at 0 and the second at phi_a + theta1 (or phi_a - theta1
// for the primed overlaps). Lambda -> 0 recovers the point-like model.

#include "giantscatter/analytic.hpp"
#include "giantscatter/core.hpp"

namespace giantscatter {

struct ContinuousCouplingSpec {
  double width = kPi / 2;  ///< Lambda, in phase units
};

struct OverlapIntegrals {
  double gamma = 0.0;
  double j = 0.0;
  double gamma_ex = 0.0;
  double gamma_ex_prime = 0.0;
  double j_ex = 0.0;
  double j_ex_prime = 0.0;
};

/// Printed closed forms, evaluated literally (including the exchange shift
/// J_ex whose small-width limit keeps an extra Upsilon * psi / 2).
/// Throws std::invalid_argument for Lambda <= 0.
OverlapIntegrals overlaps_closed(double lambda, double phi_a, double theta1, double upsilon);

/// Nested adaptive Gauss-Kronrod evaluation of the defining double integrals
/// over |phi - center| <= 20 Lambda. Throws NumericalError if the estimated
/// absolute error exceeds 1e-8.
OverlapIntegrals overlaps_quadrature(double lambda, double phi_a, double theta1, double upsilon);

enum class OverlapSource { closed_form, quadrature };

/// Transmissivity with overlaps inserted:
///   |x + 2i gamma - (2J + J_ex + J'_ex) +- i (Gamma_ex - Gamma'_ex)|^2 / |D_c|^2
/// with D_c = x + 2i gamma + i(2 Gamma + 2iJ + Gamma_ex + Gamma'_ex + iJ_ex + iJ'_ex)
/// and x = delta_ka + Delta_c1 + 2 Omega^2 / Delta_c1. The upper sign is 1 -> 2.
double t_continuous(const ScatterParams& params, const OverlapIntegrals& overlaps, Direction direction);

double t_continuous(const ScatterParams& params, const ContinuousCouplingSpec& spec, Direction direction,
                    OverlapSource source = OverlapSource::quadrature);

/// delta_ka at which x = 2J + J_ex + J'_ex, where both numerators lose their real part.
double continuous_resonance_delta(const ScatterParams& params, const OverlapIntegrals& overlaps);

}  // namespace giantscatter
