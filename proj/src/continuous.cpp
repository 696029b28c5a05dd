#include "giantscatter/continuous.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace giantscatter {

using namespace std::complex_literals;

namespace {

void require_width(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("coupling width Lambda must be finite and > 0");
}

double exchange_shift_closed(double lambda, double psi, double upsilon) {
  const double l2 = lambda * lambda;
  const double bracket = 8.0 * psi + std::exp(-2.0 * psi / lambda) * 2.0 * l2 * psi + 12.0 * lambda + l2 * lambda;
  return upsilon / ((l2 + 4.0) * (l2 + 4.0)) * (bracket + 16.0 * std::sin(psi));
}

constexpr double kTruncation = 20.0;
constexpr double kTolerance = 1e-8;

// Integral over [lo, hi] split at the given kinks.
template <class F>
double piecewise(F&& f, double lo, double hi, std::vector<double> kinks, double rel_tol, double& error) {
  kinks.push_back(lo);
  kinks.push_back(hi);
  std::sort(kinks.begin(), kinks.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
    const double a = std::max(lo, kinks[i]);
    const double b = std::min(hi, kinks[i + 1]);
    if (!(b > a)) continue;
    double err = 0.0;
    sum += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 10, rel_tol, &err);
    error += err;
  }
  return sum;
}

// \int\int nu(phi; c1) nu(phi'; c2) K(phi - phi') dphi dphi'
template <class K>
double double_overlap(double lambda, double upsilon, double c1, double c2, K kernel) {
  const double amp = std::sqrt(upsilon) / lambda;
  auto profile = [&](double p, double c) { return amp * std::exp(-2.0 * std::abs(p - c) / lambda); };
  const double reach = kTruncation * lambda;
  double inner_error = 0.0;
  double outer_error = 0.0;
  auto outer = [&](double p) {
    auto inner = [&](double q) { return profile(q, c2) * kernel(p - q); };
    double err = 0.0;
    const double v = piecewise(inner, c2 - reach, c2 + reach, {c2, p}, 1e-11, err);
    inner_error = std::max(inner_error, err);
    return profile(p, c1) * v;
  };
  const double value = piecewise(outer, c1 - reach, c1 + reach, {c1, c2}, 1e-10, outer_error);
  // Inner errors are weighted by the outer profile, whose integral is sqrt(Upsilon).
  const double achieved = outer_error + inner_error * std::sqrt(upsilon);
  if (!std::isfinite(value) || achieved > kTolerance) {
    std::ostringstream msg;
    msg << "overlap quadrature did not converge (estimated error " << achieved << ", Lambda=" << lambda
        << ", centers " << c1 << ", " << c2 << ")";
    throw NumericalError(msg.str());
  }
  return value;
}

double cos_kernel(double s) { return std::cos(s); }
double sin_abs_kernel(double s) { return std::sin(std::abs(s)); }

}  // namespace

OverlapIntegrals overlaps_closed(double lambda, double phi_a, double theta1, double upsilon) {
  require_width(lambda);
  const double l2 = lambda * lambda;
  const double norm = 1.0 / ((l2 + 4.0) * (l2 + 4.0));
  const double plus = phi_a + theta1;
  const double minus = phi_a - theta1;
  OverlapIntegrals o;
  o.gamma = 16.0 * upsilon * norm;
  o.j = upsilon * lambda * (l2 + 12.0) * norm;
  o.gamma_ex = 16.0 * upsilon * std::cos(plus) * norm;
  o.gamma_ex_prime = 16.0 * upsilon * std::cos(minus) * norm;
  o.j_ex = exchange_shift_closed(lambda, plus, upsilon);
  o.j_ex_prime = exchange_shift_closed(lambda, minus, upsilon);
  return o;
}

OverlapIntegrals overlaps_quadrature(double lambda, double phi_a, double theta1, double upsilon) {
  require_width(lambda);
  if (upsilon < 0.0) throw std::invalid_argument("Upsilon must be >= 0");
  const double plus = phi_a + theta1;
  const double minus = phi_a - theta1;
  OverlapIntegrals o;
  o.gamma = double_overlap(lambda, upsilon, 0.0, 0.0, cos_kernel);
  o.j = double_overlap(lambda, upsilon, 0.0, 0.0, sin_abs_kernel);
  o.gamma_ex = double_overlap(lambda, upsilon, 0.0, plus, cos_kernel);
  o.gamma_ex_prime = double_overlap(lambda, upsilon, 0.0, minus, cos_kernel);
  o.j_ex = double_overlap(lambda, upsilon, 0.0, plus, sin_abs_kernel);
  o.j_ex_prime = double_overlap(lambda, upsilon, 0.0, minus, sin_abs_kernel);
  return o;
}

double t_continuous(const ScatterParams& params, const OverlapIntegrals& o, Direction direction) {
  validate(params, ModelFamily::A);
  const double x = params.delta_ka_MHz + params.drive1.detuning_MHz + lamb_shift(ModelFamily::A, params.drive1);
  const Complex base = x + 2.0i * params.gamma_MHz;
  const double sign = direction == Direction::right ? 1.0 : -1.0;
  const Complex num = base - (2.0 * o.j + o.j_ex + o.j_ex_prime) + sign * 1.0i * (o.gamma_ex - o.gamma_ex_prime);
  const Complex den =
      base + 1.0i * (2.0 * o.gamma + 2.0i * o.j + o.gamma_ex + o.gamma_ex_prime + 1.0i * o.j_ex + 1.0i * o.j_ex_prime);
  return std::norm(num / den);
}

double t_continuous(const ScatterParams& params, const ContinuousCouplingSpec& spec, Direction direction,
                    OverlapSource source) {
  validate(params, ModelFamily::A);
  const double ups = effective_rate(params.mode_a.decay_MHz, params.drive1.rabi_MHz, params.drive1.detuning_MHz);
  const double phi = params.mode_a.propagation_phase_rad;
  const double theta = params.drive1.local_phase_rad;
  const OverlapIntegrals o = source == OverlapSource::closed_form ? overlaps_closed(spec.width, phi, theta, ups)
                                                                  : overlaps_quadrature(spec.width, phi, theta, ups);
  return t_continuous(params, o, direction);
}

double continuous_resonance_delta(const ScatterParams& params, const OverlapIntegrals& o) {
  return 2.0 * o.j + o.j_ex + o.j_ex_prime - params.drive1.detuning_MHz - lamb_shift(ModelFamily::A, params.drive1);
}

}  // namespace giantscatter
