#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "giantscatter/analytic.hpp"
#include "giantscatter/bethe.hpp"
#include "giantscatter/continuous.hpp"
#include "giantscatter/presets.hpp"

namespace giantscatter {

ScatterParams random_params(ModelFamily family, std::mt19937_64& rng, bool lossless, bool closed_loop,
                            bool equal_rabi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto detuning = [&] { return (unit(rng) < 0.5 ? -1.0 : 1.0) * between(10.0, 60.0); };

  ScatterParams p;
  p.gamma_MHz = lossless ? 0.0 : between(0.0, 0.005);
  p.drive1 = {between(0.2, 3.0), detuning(), between(0.0, kTwoPi)};
  p.mode_a = {between(0.2, 2.0), between(0.0, kTwoPi)};
  if (family != ModelFamily::A) {
    const double d2 = closed_loop ? -p.drive1.detuning_MHz : detuning();
    const double omega2 = between(0.2, 3.0);
    p.drive2 = DriveField{equal_rabi ? p.drive1.rabi_MHz : omega2, d2, between(0.0, kTwoPi)};
    p.mode_b = WaveguideMode{between(0.2, 2.0), between(0.0, kTwoPi)};
  }
  // Within a few effective linewidths of the two-photon resonance.
  const double ups = effective_rate(p.mode_a.decay_MHz, p.drive1.rabi_MHz, p.drive1.detuning_MHz);
  p.delta_ka_MHz = -p.drive1.detuning_MHz + between(-10.0, 10.0) * std::max(ups, 1e-3);
  return p;
}

namespace {

struct Reporter {
  std::ostream& out;
  bool all = true;

  void line(bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    all = all && ok;
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

ModelKind kinds[] = {ModelKind::A_full, ModelKind::A_eff, ModelKind::B_full,
                     ModelKind::B_eff,  ModelKind::C_full, ModelKind::C_eff};

ScatterParams flip_thetas(ScatterParams p) {
  p.drive1.local_phase_rad = -p.drive1.local_phase_rad;
  if (p.drive2) p.drive2->local_phase_rad = -p.drive2->local_phase_rad;
  return p;
}

}  // namespace

bool run_checks(std::ostream& out, int draws, std::uint64_t seed) {
  Reporter r{out};
  std::mt19937_64 rng(seed);

  {
    double worst = 0.0;
    for (ModelKind k : kinds) {
      for (int i = 0; i < draws; ++i) {
        const auto p = random_params(family_of(k), rng, true, true);
        for (Port in : {Port::p1, Port::p2})
          worst = std::max(worst, std::abs(scatter(k, p, in).total_probability() - 1.0));
      }
    }
    r.line(worst < 1e-9, "solver unitarity (gamma = 0, six models)", fmt("max |sum - 1| = %.3g", worst));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
      worst = std::max(worst, std::abs(s_eff_B(random_params(ModelFamily::B, rng, true, true)).sum() - 1.0));
      const auto p = random_params(ModelFamily::C, rng, true, true);
      for (Port in : {Port::p1, Port::p2}) worst = std::max(worst, std::abs(p_eff_C(p, in).sum() - 1.0));
    }
    r.line(worst < 1e-12, "closed-form unitarity (gamma = 0)", fmt("max |sum - 1| = %.3g", worst));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
      const auto a = random_params(ModelFamily::A, rng, false, true);
      worst = std::max(worst, std::abs(scatter(ModelKind::A_eff, a, Port::p1).probability(Port::p2) -
                                       t_eff_A(a, Direction::right)));
      worst = std::max(worst, std::abs(scatter(ModelKind::A_eff, a, Port::p2).probability(Port::p1) -
                                       t_eff_A(a, Direction::left)));
      // The printed converter formulas carry no Lamb shift, which cancels only for equal Rabi frequencies.
      const auto b = random_params(ModelFamily::B, rng, false, true, true);
      const auto sb = scatter(ModelKind::B_eff, b, Port::p1).grouped();
      const auto fb = s_eff_B(b);
      worst = std::max({worst, std::abs(sb.reflection - fb.reflection), std::abs(sb.transmission - fb.transmission),
                        std::abs(sb.backward - fb.backward), std::abs(sb.forward - fb.forward)});
      const auto c = random_params(ModelFamily::C, rng, false, true, true);
      for (Port in : {Port::p1, Port::p2}) {
        const auto sc = scatter(ModelKind::C_eff, c, in).grouped();
        const auto fc = p_eff_C(c, in);
        worst = std::max({worst, std::abs(sc.reflection - fc.reflection), std::abs(sc.transmission - fc.transmission),
                          std::abs(sc.backward - fc.backward), std::abs(sc.forward - fc.forward)});
      }
    }
    r.line(worst < 1e-10, "closed form vs solver (effective models)", fmt("max |dP| = %.3g", worst));
  }

  {
    double worst = 0.0;
    for (ModelKind k : kinds) {
      for (int i = 0; i < std::max(1, draws / 4); ++i) {
        const auto p = random_params(family_of(k), rng, false, true);
        const auto right = scatter(k, p, Port::p2).grouped();
        const auto flipped = scatter(k, flip_thetas(p), Port::p1).grouped();
        worst = std::max({worst, std::abs(right.reflection - flipped.reflection),
                          std::abs(right.transmission - flipped.transmission),
                          std::abs(right.backward - flipped.backward), std::abs(right.forward - flipped.forward)});
      }
    }
    r.line(worst < 1e-10, "chirality symmetry (port swap == theta flip)", fmt("max |dP| = %.3g", worst));
  }

  {
    ScatterParams p;
    p.drive1.local_phase_rad = 0.0;
    p.mode_a.propagation_phase_rad = kPi;
    double worst = 0.0;
    for (int i = 0; i < 801; ++i) {
      p.delta_ka_MHz = -31.0 + 2.0 * i / 800.0;
      worst = std::max(worst, std::abs(t_eff_A(p, Direction::right) - 1.0));
    }
    r.line(worst < 1e-12, "decoupling line (phi_a = pi, theta1 = 0)", fmt("max |T - 1| = %.3g", worst));
  }

  {
    ScatterParams p;
    p.drive1 = {1.0, 30.0, kPi / 2};
    p.mode_a = {1.0, kPi / 2};
    p.delta_ka_MHz = resonance_delta_A(p);
    const double t12 = t_eff_A(p, Direction::right);
    const double t21 = t_eff_A(p, Direction::left);
    const double f12 = scatter(ModelKind::A_full, p, Port::p1).probability(Port::p2);
    const double f21 = scatter(ModelKind::A_full, p, Port::p2).probability(Port::p1);
    const bool ok = std::abs(t21 - 1.0) < 1e-9 && t12 < 0.01 && std::abs(f12 - t12) < 0.02 && std::abs(f21 - t21) < 0.02;
    r.line(ok, "perfect nonreciprocity at resonance",
           fmt("T12 = %.4g, T21 = %.12g, full T12 = %.4g", t12, t21, f12) + fmt(", full T21 = %.6g", f21));
  }

  {
    // max over delta of |T_full - T_eff| for Delta_c1 = 10, 20, 30
    double diff[3];
    const double deltas[3] = {10.0, 20.0, 30.0};
    for (int k = 0; k < 3; ++k) {
      ScatterParams p;
      p.drive1 = {1.0, deltas[k], 0.0};
      const double c = resonance_delta_A(p);
      const double half = 40.0 * effective_rate(1.0, 1.0, deltas[k]);
      diff[k] = 0.0;
      for (int i = 0; i < 2001; ++i) {
        p.delta_ka_MHz = c - half + 2.0 * half * i / 2000.0;
        diff[k] = std::max(diff[k], std::abs(scatter(ModelKind::A_full, p, Port::p1).probability(Port::p2) -
                                             t_eff_A(p, Direction::right)));
      }
    }
    const bool ok = diff[0] > diff[1] && diff[1] > diff[2] && diff[2] < 0.02;
    r.line(ok, "adiabatic convergence (Delta_c1 = 10, 20, 30)",
           fmt("max |T_full - T_eff| = %.4g, %.4g, %.4g", diff[0], diff[1], diff[2]));
  }

  {
    double peak0 = 0.0, peak1 = 0.0;
    for (double omega : {1.0, 2.0}) {
      ScatterParams p;
      p.drive1 = {omega, 30.0, 0.0};
      p.drive2 = DriveField{omega, -30.0, 0.0};
      p.mode_b = WaveguideMode{};
      for (int i = 0; i < 801; ++i) {
        p.delta_ka_MHz = -30.05 + 0.1 * i / 800.0;
        p.gamma_MHz = 0.0;
        peak0 = std::max(peak0, s_eff_B(p).total_conversion());
        p.gamma_MHz = 0.001;
        peak1 = std::max(peak1, s_eff_B(p).total_conversion());
      }
    }
    r.line(std::abs(peak0 - 0.5) < 1e-12 && peak1 < 0.5, "symmetric converter cap",
           fmt("peak (gamma = 0) = %.15g, peak (gamma = 1 kHz) = %.6g", peak0, peak1));
  }

  {
    ScatterParams p;
    p.gamma_MHz = 0.0;
    p.drive1 = {2.0, 30.0, kPi / 2};
    p.drive2 = DriveField{2.0, -30.0, kPi / 2};
    p.mode_a = {1.0, kPi / 2};
    p.mode_b = WaveguideMode{1.0, kPi / 2};
    p.delta_ka_MHz = -30.0;
    const auto c = p_eff_C(p, Port::p1);
    p.mode_b->propagation_phase_rad = kPi;
    const auto e = p_eff_C(p, Port::p1);
    p.mode_b->propagation_phase_rad = 3 * kPi / 2;
    const auto f = p_eff_C(p, Port::p1);
    const bool ok = std::abs(c.forward - 1.0) < 1e-12 && c.reflection < 1e-12 && c.backward < 1e-12 &&
                    std::abs(e.backward - 0.5) < 1e-12 && std::abs(e.forward - 0.5) < 1e-12 &&
                    std::abs(f.backward - 1.0) < 1e-12;
    r.line(ok, "asymmetric converter routing",
           fmt("P14 = %.15g, P13(phi_b=pi) = %.15g, P13(phi_b=3pi/2) = %.15g", c.forward, e.backward, f.backward));
  }

  {
    double worst = 0.0;
    double jex_gap = 0.0;
    for (double lambda : {0.3, kPi / 2, 2.5}) {
      for (double phi : {0.4, kPi / 2, 2.9}) {
        for (double theta : {0.0, 0.7, kPi / 2}) {
          const auto c = overlaps_closed(lambda, phi, theta, 1.0);
          const auto q = overlaps_quadrature(lambda, phi, theta, 1.0);
          worst = std::max({worst, std::abs(c.gamma - q.gamma), std::abs(c.j - q.j),
                            std::abs(c.gamma_ex - q.gamma_ex), std::abs(c.gamma_ex_prime - q.gamma_ex_prime)});
          jex_gap = std::max({jex_gap, std::abs(c.j_ex - q.j_ex), std::abs(c.j_ex_prime - q.j_ex_prime)});
        }
      }
    }
    r.line(worst < 1e-6, "continuous overlaps, closed form vs quadrature",
           fmt("max |diff| = %.3g (Gamma, J, Gamma_ex, Gamma'_ex); exchange shift J_ex differs by up to %.3g",
               worst, jex_gap));
  }

  return r.all;
}

}  // namespace giantscatter
