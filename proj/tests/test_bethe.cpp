#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "giantscatter/analytic.hpp"
#include "giantscatter/bethe.hpp"
#include "oracle.hpp"

using namespace giantscatter;
using Catch::Approx;

namespace {

const ModelKind kAll[] = {ModelKind::A_full, ModelKind::A_eff, ModelKind::B_full,
                          ModelKind::B_eff,  ModelKind::C_full, ModelKind::C_eff};

ScatterParams fig3() {
  ScatterParams p;
  p.drive1 = {1, 30, kPi / 2};
  p.mode_a = {1, kPi / 2};
  return p;
}

ScatterParams converter(double omega) {
  ScatterParams p;
  p.gamma_MHz = 0.0;
  p.drive1 = {omega, 30, 0};
  p.drive2 = DriveField{omega, -30, 0};
  p.mode_b = WaveguideMode{};
  p.delta_ka_MHz = -30;
  return p;
}

std::vector<Port> ports_of(ModelKind k) {
  if (family_of(k) == ModelFamily::A) return {Port::p1, Port::p2};
  return {Port::p1, Port::p2, Port::p3, Port::p4};
}

}  // namespace

TEST_CASE("system sizes and unknown labels") {
  const ScatterParams p = converter(1.0);
  auto labels = [&](ModelKind k) { return build_system(make_topology(k, p), Port::p1).labels; };
  CHECK(labels(ModelKind::A_full) ==
        std::vector<std::string>{"A_R", "A_L", "out1", "out2", "u_b", "u_c", "u_d"});
  CHECK(labels(ModelKind::A_eff) == std::vector<std::string>{"A_R", "A_L", "out1", "out2", "u_d"});
  CHECK(labels(ModelKind::C_eff).size() == 9);
  CHECK(labels(ModelKind::B_eff).size() == 5);
  CHECK(labels(ModelKind::B_full).size() == 7);
  CHECK(labels(ModelKind::C_full).size() == 13);
}

TEST_CASE("the effective-A system reproduces the hand-written boundary equations") {
  ScatterParams p;
  p.drive1 = {1, 30, kPi / 3};
  p.mode_a = {1, kPi / 2};
  p.delta_ka_MHz = -30.05;
  const auto sys = build_system(make_topology(ModelKind::A_eff, p), Port::p1);
  // unknowns: A_R, A_L, r, t, u_d; rows: jumps at x = 0, jumps at x = d, level
  const double xi = -1.0 / 30;
  const Complex ephi = std::exp(Complex(0, kPi / 2));
  const Complex etheta = std::exp(Complex(0, kPi / 3));
  const Complex i(0, 1);
  // -i (A_R - 1) + xi u = 0
  CHECK(std::abs(sys.at(0, 0) + i) < 1e-15);
  CHECK(std::abs(sys.rhs[0] + i) < 1e-15);
  CHECK(std::abs(sys.at(0, 4) - xi) < 1e-15);
  // -i (t - A_R) e^{i phi} + xi e^{i theta} u = 0
  CHECK(std::abs(sys.at(2, 3) + i * ephi) < 1e-15);
  CHECK(std::abs(sys.at(2, 0) - i * ephi) < 1e-15);
  CHECK(std::abs(sys.at(2, 4) - xi * etheta) < 1e-15);
  // xi/2 (1 + A_R + r + A_L) + xi e^{-i theta}/2 ((A_R + t) e^{i phi} + A_L e^{-i phi}) - D u = 0
  CHECK(std::abs(sys.at(4, 0) - xi / 2.0 * (1.0 + ephi / etheta)) < 1e-15);
  CHECK(std::abs(sys.at(4, 3) - xi / 2.0 * ephi / etheta) < 1e-15);
  CHECK(std::abs(sys.at(4, 1) - xi / 2.0 * (1.0 + 1.0 / (ephi * etheta))) < 1e-15);
  CHECK(std::abs(sys.rhs[4] + xi / 2.0) < 1e-15);
  const Complex d = -30.05 + 30 + 2.0 / 30 + Complex(0, 0.002);
  CHECK(std::abs(sys.at(4, 4) + d) < 1e-12);
}

TEST_CASE("decoupled waveguide passes the photon untouched") {
  ScatterParams p;
  p.mode_a.decay_MHz = 0.0;
  const auto s = scatter(ModelKind::A_full, p, Port::p1);
  CHECK(std::abs(s.port_amplitudes.at(Port::p2) - 1.0) < 1e-14);
  CHECK(std::abs(s.port_amplitudes.at(Port::p1)) < 1e-14);
  for (const auto& [label, u] : s.atomic_amplitudes) CHECK(std::abs(u) < 1e-14);
}

TEST_CASE("solver agrees with the photon-eliminated Green function for every model") {
  oracle::Draw d(101);
  double worst = 0.0;
  for (ModelKind k : kAll) {
    for (int i = 0; i < 200; ++i) {
      const auto p = oracle::params(d, family_of(k), false, i % 2 == 0);
      const auto topo = make_topology(k, p);
      for (Port in : ports_of(k)) {
        const auto ref = oracle::green_probabilities(topo, in);
        const auto sol = solve(build_system(topo, in));
        for (const auto& [port, prob] : ref) worst = std::max(worst, std::abs(sol.probability(port) - prob));
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("flux conservation without loss") {
  oracle::Draw d(202);
  for (ModelKind k : kAll) {
    for (int i = 0; i < 300; ++i) {
      const auto p = oracle::params(d, family_of(k), true, i % 3 != 0);
      for (Port in : ports_of(k)) {
        const auto s = scatter(k, p, in);
        INFO(to_string(k) << " port " << port_number(in));
        CHECK(s.total_probability() == Approx(1.0).margin(1e-9));
        for (const auto& [port, prob] : s.probabilities) CHECK(prob <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("loss removes flux and only loss does") {
  oracle::Draw d(303);
  for (ModelKind k : kAll) {
    for (int i = 0; i < 40; ++i) {
      auto p = oracle::params(d, family_of(k), true);
      CHECK(scatter(k, p, Port::p1).total_probability() == Approx(1.0).margin(1e-10));
      for (double g : {0.0005, 0.002, 0.02}) {
        p.gamma_MHz = g;
        const double total = scatter(k, p, Port::p1).total_probability();
        CHECK(total < 1.0);
        CHECK(total > 0.0);
      }
    }
  }
}

TEST_CASE("right incidence equals left incidence with mirrored drive phases") {
  oracle::Draw d(404);
  for (ModelKind k : kAll) {
    for (int i = 0; i < 100; ++i) {
      auto p = oracle::params(d, family_of(k), i % 2 == 0);
      const auto right = scatter(k, p, Port::p2).grouped();
      p.drive1.local_phase_rad = -p.drive1.local_phase_rad;
      if (p.drive2) p.drive2->local_phase_rad = -p.drive2->local_phase_rad;
      const auto left = scatter(k, p, Port::p1).grouped();
      CHECK(right.reflection == Approx(left.reflection).margin(1e-10));
      CHECK(right.transmission == Approx(left.transmission).margin(1e-10));
      CHECK(right.backward == Approx(left.backward).margin(1e-10));
      CHECK(right.forward == Approx(left.forward).margin(1e-10));
    }
  }
}

TEST_CASE("effective-A solve matches the closed form on random draws") {
  oracle::Draw d(505);
  for (int i = 0; i < 1000; ++i) {
    const auto p = oracle::params(d, ModelFamily::A, false);
    CHECK(std::abs(scatter(ModelKind::A_eff, p, Port::p1).probability(Port::p2) - t_eff_A(p, Direction::right)) <
          1e-10);
  }
}

TEST_CASE("decoupling line of the effective giant atom") {
  ScatterParams p;
  p.drive1.local_phase_rad = 0;
  p.mode_a.propagation_phase_rad = 3 * kPi;
  for (int i = 0; i < 101; ++i) {
    p.delta_ka_MHz = -31 + 0.02 * i;
    CHECK(scatter(ModelKind::A_eff, p, Port::p1).probability(Port::p2) == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("symmetric converter at resonance splits evenly") {
  const auto s = scatter(ModelKind::B_eff, converter(1.0), Port::p1).grouped();
  CHECK(s.reflection == Approx(0.25).margin(1e-12));
  CHECK(s.transmission == Approx(0.25).margin(1e-12));
  CHECK(s.backward == Approx(0.25).margin(1e-12));
  CHECK(s.forward == Approx(0.25).margin(1e-12));
}

TEST_CASE("asymmetric converter routes forward at the chiral point") {
  ScatterParams p = converter(2.0);
  p.drive1.local_phase_rad = kPi / 2;
  p.drive2->local_phase_rad = kPi / 2;
  p.mode_a.propagation_phase_rad = kPi / 2;
  p.mode_b->propagation_phase_rad = kPi / 2;
  const auto s = scatter(ModelKind::C_eff, p, Port::p1);
  CHECK(s.probability(Port::p4) == Approx(1.0).margin(1e-12));
  CHECK(s.probability(Port::p1) < 1e-12);
  CHECK(s.probability(Port::p3) < 1e-12);
}

TEST_CASE("full models track their effective reductions far from single-excitation resonance") {
  // Converters: the elimination error is O(Gamma/Delta) in the line position.
  ScatterParams p = converter(1.0);
  p.gamma_MHz = 0.001;
  for (double x : {-30.02, -30.0, -29.98}) {
    p.delta_ka_MHz = x;
    const auto full = scatter(ModelKind::B_full, p, Port::p1).grouped();
    const auto eff = scatter(ModelKind::B_eff, p, Port::p1).grouped();
    CHECK(full.total_conversion() == Approx(eff.total_conversion()).margin(0.05));
  }
  ScatterParams q = fig3();
  q.delta_ka_MHz = resonance_delta_A(q);
  CHECK(scatter(ModelKind::A_full, q, Port::p2).probability(Port::p1) == Approx(1.0).margin(0.02));
  CHECK(scatter(ModelKind::A_full, q, Port::p1).probability(Port::p2) < 0.01);
}

TEST_CASE("topology and incidence errors") {
  const ScatterParams p;
  auto topo = make_topology(ModelKind::A_eff, p);
  CHECK_THROWS_AS(build_system(topo, Port::p3), std::invalid_argument);
  auto bad = topo;
  bad.modes[0].points = {0, 1, 1};
  CHECK_THROWS_AS(build_system(bad, Port::p1), std::invalid_argument);
  bad = topo;
  bad.modes[0].points = {1, 0};
  CHECK_THROWS_AS(build_system(bad, Port::p1), std::invalid_argument);
  bad = topo;
  bad.couplings[0].level = 3;
  CHECK_THROWS_AS(build_system(bad, Port::p1), std::invalid_argument);
  CHECK_THROWS_AS(scatter(ModelKind::B_eff, p, Port::p1), std::invalid_argument);
}

TEST_CASE("singular systems raise a diagnostic naming the parameters") {
  ScatterParams p;
  p.gamma_MHz = 0.0;
  p.mode_a.decay_MHz = 0.0;
  p.drive1.rabi_MHz = 0.0;
  p.delta_ka_MHz = -30.0;  // |r1 r2> exactly on resonance and decoupled from everything
  try {
    scatter(ModelKind::A_eff, p, Port::p1);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    const std::string what = e.what();
    CHECK(what.find("rcond") != std::string::npos);
    CHECK(what.find("model=A_eff") != std::string::npos);
    CHECK(what.find("delta_ka=-30") != std::string::npos);
  }
}
