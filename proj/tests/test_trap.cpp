#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "lcp/constants.hpp"
#include "lcp/errors.hpp"
#include "lcp/trap.hpp"

using namespace lcp;
namespace k = lcp::constants;

namespace {

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

AtomResponse standin_atom() {
  return AtomResponse::single_oscillator(319.0 * k::polarizability_au,
                                         2.415e15, 86.909 * k::atomic_mass_unit);
}

TrapConfiguration default_trap() {
  TrapConfiguration t;
  t.omega_x = 2.0 * k::pi * 229.0;
  t.mass = 86.909 * k::atomic_mass_unit;
  t.x0 = 0.0;
  t.z_cm = 2e-6;
  return t;
}

CorrugationProfile grooves(double period) {
  return CorrugationProfile::rectangular_grooves(period, 250e-9, period / 2.0,
                                                 101);
}

} // namespace

TEST_CASE("anharmonic factor") {
  const double k_c = 2.0 * k::pi / 4e-6;
  const double f = anharmonic_factor(k_c, 0.5e-6);
  CHECK(std::abs(f - 0.0771) < 0.0005); // the "about 8%" example
  CHECK(anharmonic_factor(k_c, 0.0) == 0.0);
  CHECK(rel_err(anharmonic_factor(k_c, 1.0e-6), 4.0 * f) < 1e-12);
}

TEST_CASE("detectability") {
  const auto yes = detectability(2e-5, 1e-5);
  CHECK(yes.detectable);
  CHECK(yes.margin == doctest::Approx(2.0));
  CHECK_FALSE(detectability(5e-6, 1e-5).detectable);
  CHECK(detectability(1e-5, 1e-5).detectable); // boundary inclusive
  CHECK(detectability(-2e-5, 1e-5).detectable);
  CHECK_THROWS_AS(detectability(1e-5, 0.0), DomainError);
}

TEST_CASE("thomas_fermi_density shape") {
  const double radius = 1e-6;
  CHECK(thomas_fermi_density(0.0, 0.0, radius) > 0.0);
  CHECK(thomas_fermi_density(radius, 0.0, radius) == 0.0);
  CHECK(thomas_fermi_density(0.9e-6, 0.9e-6, radius) == 0.0);
  CHECK(rel_err(thomas_fermi_density(0.0, 0.0, radius),
                15.0 / (6.0 * k::pi) / (radius * radius)) < 1e-12);
}

TEST_CASE("null interaction gives zero shift") {
  const auto kernel = ResponseKernel::perfect_cp(
      AtomResponse::single_oscillator(0.0, 2.415e15));
  const auto r = gamma_single(grooves(4e-6), kernel, default_trap());
  CHECK(r.gamma_harmonic == 0.0);
  CHECK(r.gamma == 0.0);
}

TEST_CASE("proximity-force kernel predicts no shift above the plateau") {
  const auto kernel = ResponseKernel::pfa_specular(
      standin_atom(), MaterialResponse::perfect_reflector());
  auto trap = default_trap();
  for (double x0 : {0.0, 0.3e-6, -0.6e-6}) { // anywhere on the plateau
    trap.x0 = x0;
    const auto r = gamma_single(grooves(4e-6), kernel, trap);
    CHECK(r.gamma_harmonic == 0.0);
    CHECK(r.gamma == 0.0);
  }
}

TEST_CASE("proximity-force kernel above a sinusoid matches the local "
          "curvature of the plane potential") {
  const auto atom = standin_atom();
  const auto mirror = MaterialResponse::perfect_reflector();
  const auto kernel = ResponseKernel::pfa_specular(atom, mirror);
  const double h0 = 50e-9;
  const auto p = CorrugationProfile::sinusoid(4e-6, h0);
  auto trap = default_trap();
  const auto r = gamma_single(p, kernel, trap);
  // U(x) = U0(z - h(x)): at the crest h'' = -h0 k_c^2, h' = 0, so
  // U'' = h0 k_c^2 U0'(z - h0).
  const double k_c = p.wavevector();
  const double u0p = differentiate(
      [&](double zz) { return u0_plane(atom, mirror, zz).value; },
      trap.z_cm - h0, 0.2 * trap.z_cm);
  const double expected_curv = h0 * k_c * k_c * u0p;
  const double stiffness = trap.mass * trap.omega_x * trap.omega_x;
  CHECK(rel_err(r.gamma_harmonic,
                std::sqrt(1.0 + expected_curv / stiffness) - 1.0) < 1e-5);
}

TEST_CASE("full kernel shift above the plateau: sign, composition, flags") {
  const auto kernel = ResponseKernel::perfect_cp(standin_atom());
  auto trap = default_trap();

  SUBCASE("peak-scale value and positive sign across the sweep") {
    std::vector<double> gammas;
    for (double phase = 1.0; phase <= 6.0; phase += 1.0) {
      const double k_c = phase / trap.z_cm;
      const auto r =
          gamma_single(grooves(2.0 * k::pi / k_c), kernel, trap);
      gammas.push_back(r.gamma_harmonic);
    }
    for (double g : gammas)
      CHECK(g > 0.0); // sign stable over the sweep
  }

  SUBCASE("exact and first-order harmonic shifts agree when tiny") {
    // shrink the response with a weak atom so |U''| / (m w^2) < 1e-3
    const auto weak = ResponseKernel::perfect_cp(
        AtomResponse::single_oscillator(1e-2 * 319.0 * k::polarizability_au,
                                        2.415e15));
    const auto r = gamma_single(grooves(4e-6), weak, trap);
    CHECK(std::abs(2.0 * r.gamma_first_order) < 1e-3);
    CHECK(rel_err(r.gamma_harmonic, r.gamma_first_order) < 1e-3);
  }

  SUBCASE("composition identity") {
    trap.delta_x = 0.5e-6;
    const auto r = gamma_single(grooves(4e-6), kernel, trap);
    CHECK(rel_err(r.gamma, r.gamma_harmonic * r.finite_size_factor *
                               (1.0 - r.anharmonic_factor)) < 1e-12);
    CHECK(r.anharmonic_factor == doctest::Approx(0.0771).epsilon(0.01));
  }
}

TEST_CASE("trap destabilization is reported") {
  const auto kernel = ResponseKernel::perfect_cp(standin_atom());
  auto trap = default_trap();
  trap.x0 = 2e-6;              // above the groove center: curvature < 0
  trap.omega_x = 2.0 * k::pi * 0.05; // feeble trap
  CHECK_THROWS_AS(gamma_single(grooves(4e-6), kernel, trap),
                  InstabilityError);
}

TEST_CASE("condensate averaging") {
  const auto kernel = ResponseKernel::perfect_cp(standin_atom());
  auto trap = default_trap();
  const auto profile = grooves(4e-6);
  const auto single = gamma_single(profile, kernel, trap);

  SUBCASE("point-like limit recovers the single atom") {
    trap.tf_radius = 1e-9;
    const auto r = gamma_bec(profile, kernel, trap);
    CHECK(rel_err(r.gamma, single.gamma) < 1e-4);
    CHECK(r.finite_size_factor == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("radius zero delegates to the single atom") {
    trap.tf_radius = 0.0;
    const auto r = gamma_bec(profile, kernel, trap);
    CHECK(r.gamma == single.gamma);
  }
  SUBCASE("shift grows with the condensate radius") {
    double prev = single.gamma_harmonic;
    for (double radius : {0.5e-6, 1.0e-6, 1.5e-6}) {
      trap.tf_radius = radius;
      const auto r = gamma_bec(profile, kernel, trap);
      const double averaged = r.gamma_harmonic * r.finite_size_factor;
      CHECK(averaged > prev);
      prev = averaged;
    }
  }
  SUBCASE("continuity in the radius") {
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double radius : {8e-7, 4e-7, 2e-7, 1e-7}) {
      trap.tf_radius = radius;
      const auto r = gamma_bec(profile, kernel, trap);
      const double gap = std::abs(r.gamma - single.gamma);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("trap validation") {
  auto trap = default_trap();
  trap.tf_radius = 2.5e-6; // touches the surface
  CHECK_THROWS_AS(trap.validate(), DomainError);
  trap = default_trap();
  trap.omega_x = 0.0;
  CHECK_THROWS_AS(trap.validate(), DomainError);
  trap = default_trap();
  trap.mass = -1.0;
  CHECK_THROWS_AS(trap.validate(), DomainError);
}
