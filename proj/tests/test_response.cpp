#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lcp/constants.hpp"
#include "lcp/errors.hpp"
#include "lcp/response.hpp"

using namespace lcp;

namespace {

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// Synthetic rubidium-like stand-in used across the suite (not measured data).
AtomResponse standin_atom() {
  return AtomResponse::single_oscillator(319.0 * constants::polarizability_au,
                                         2.415e15);
}

// Densely tabulated Drude absorption eps''(w) = gamma wp^2 / (w (w^2 + g^2)).
OpticalDataTable drude_table(double omega_p, double gamma, double w_lo,
                             double w_hi, int n) {
  OpticalDataTable t;
  t.provenance = "synthetic drude";
  for (int i = 0; i < n; ++i) {
    const double w = w_lo * std::pow(w_hi / w_lo, double(i) / (n - 1));
    t.rows.push_back(
        {w, gamma * omega_p * omega_p / (w * (w * w + gamma * gamma))});
  }
  return t;
}

double drude_imag_axis(double omega_p, double gamma, double xi) {
  return 1.0 + omega_p * omega_p / (xi * (xi + gamma));
}

} // namespace

TEST_CASE("alpha_at for the shipped kinds") {
  const auto osc = standin_atom();
  const double a0 = osc.alpha_static();
  const double wa = osc.oscillator_frequency();
  CHECK(osc.alpha(0.0) == a0);
  CHECK(rel_err(osc.alpha(wa), a0 / 2.0) < 1e-14);
  CHECK_THROWS_AS(osc.alpha(-1.0), DomainError);

  const auto stat = AtomResponse::static_polarizability(a0);
  CHECK(stat.alpha(0.0) == a0);
  CHECK(stat.alpha(1e18) == a0);

  std::vector<std::array<double, 2>> samples;
  for (int i = 0; i < 40; ++i) {
    const double xi = 1e13 * std::pow(10.0, 4.0 * i / 39.0);
    samples.push_back({xi, a0 / (1.0 + xi * xi / (wa * wa))});
  }
  const auto tab = AtomResponse::tabulated(samples, a0);
  for (const auto& s : samples)
    CHECK(tab.alpha(s[0]) == doctest::Approx(s[1]).epsilon(1e-12));
  CHECK(tab.alpha(0.0) == a0);
}

TEST_CASE("alpha_integral") {
  const auto osc = standin_atom();
  const double closed_form =
      osc.alpha_static() * osc.oscillator_frequency() * constants::pi / 2.0;

  SUBCASE("oscillator closed form agrees with direct quadrature") {
    CHECK(rel_err(osc.integrated_alpha(), closed_form) < 1e-12);
    const double quad = integrate_semi_infinite(
        [&](double xi) { return osc.alpha(xi); }, default_quadrature_1d(),
        osc.oscillator_frequency());
    CHECK(rel_err(quad, closed_form) < 1e-6);
  }

  SUBCASE("tabulated model sampled from the oscillator matches it") {
    std::vector<std::array<double, 2>> samples;
    const double wa = osc.oscillator_frequency();
    for (int i = 0; i < 400; ++i) {
      const double xi = wa * 1e-3 * std::pow(1e7, double(i) / 399.0);
      samples.push_back({xi, osc.alpha(xi)});
    }
    const auto tab = AtomResponse::tabulated(samples, osc.alpha_static());
    CHECK(rel_err(tab.integrated_alpha(), closed_form) < 1e-3);
  }

  SUBCASE("static kind has no finite integral") {
    CHECK_THROWS_AS(AtomResponse::static_polarizability(1.0).integrated_alpha(),
                    ModelError);
  }

  SUBCASE("linear in a global polarizability scale") {
    const auto doubled = AtomResponse::single_oscillator(
        2.0 * osc.alpha_static(), osc.oscillator_frequency());
    CHECK(rel_err(doubled.integrated_alpha(), 2.0 * osc.integrated_alpha()) <
          1e-12);
  }
}

TEST_CASE("epsilon_at for the shipped kinds") {
  const auto drude = MaterialResponse::drude(1.37e16, 5.3e13);
  CHECK(drude.epsilon(1e22) == doctest::Approx(1.0).epsilon(1e-10));

  const auto plasma = MaterialResponse::drude(1.37e16, 0.0);
  CHECK(rel_err(plasma.epsilon(1.37e16), 2.0) < 1e-14);

  const auto lor = MaterialResponse::lorentz({{2e31, 8e15, 1e14}});
  CHECK(rel_err(lor.epsilon(1e3), 1.0 + 2e31 / (8e15 * 8e15)) < 1e-9);

  CHECK_THROWS_AS(MaterialResponse::perfect_reflector().epsilon(1e15),
                  ModelError);
  CHECK_THROWS_AS(drude.epsilon(0.0), DomainError);
}

TEST_CASE("tabulated permittivity interpolates its samples") {
  const double wp = 1.37e16, g = 5.3e13;
  std::vector<std::array<double, 2>> samples;
  for (int i = 0; i < 60; ++i) {
    const double xi = 1e12 * std::pow(10.0, 6.0 * i / 59.0);
    samples.push_back({xi, drude_imag_axis(wp, g, xi)});
  }
  const auto mat = MaterialResponse::tabulated(samples);
  for (const auto& s : samples)
    CHECK(mat.epsilon(s[0]) == doctest::Approx(s[1]).epsilon(1e-12));
  // interpolation should track the generating model between nodes
  for (int i = 0; i < 59; ++i) {
    const double xi = std::sqrt(samples[i][0] * samples[i + 1][0]);
    CHECK(rel_err(mat.epsilon(xi), drude_imag_axis(wp, g, xi)) < 1e-3);
  }
}

TEST_CASE("response functions are positive and non-increasing") {
  const auto atoms = {standin_atom()};
  for (const auto& atom : atoms) {
    double prev = atom.alpha(0.0);
    for (int i = 0; i <= 100; ++i) {
      const double xi = 1e10 * std::pow(10.0, 9.0 * i / 100.0);
      const double a = atom.alpha(xi);
      CHECK(a > 0.0);
      CHECK(a <= prev * (1.0 + 1e-12));
      prev = a;
    }
  }
  const auto mats = {MaterialResponse::drude(1.37e16, 5.3e13),
                     MaterialResponse::lorentz({{2e31, 8e15, 1e14},
                                                {5e30, 2e16, 0.0}})};
  for (const auto& mat : mats) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
      const double xi = 1e10 * std::pow(10.0, 9.0 * i / 100.0);
      const double e = mat.epsilon(xi);
      CHECK(e >= 1.0);
      CHECK(e <= prev * (1.0 + 1e-12));
      prev = e;
    }
  }
}

TEST_CASE("kramers_kronig reproduces the analytic Drude imaginary axis") {
  const double wp = 1.37e16, g = 5.3e13;
  const auto table = drude_table(wp, g, 1e9, 1e19, 400);
  for (int i = 0; i <= 10; ++i) {
    const double xi = 1e12 * std::pow(10.0, 5.0 * i / 10.0);
    CHECK(rel_err(kramers_kronig(table, xi), drude_imag_axis(wp, g, xi)) <
          1e-2);
  }
}

TEST_CASE("kramers_kronig asymptotics and canonicalization") {
  const auto table = drude_table(1.37e16, 5.3e13, 1e11, 1e18, 120);

  SUBCASE("far above the table eps approaches 1 monotonically") {
    double prev = kramers_kronig(table, 1e19);
    CHECK(prev > 1.0);
    for (double xi : {1e20, 1e21, 1e22}) {
      const double e = kramers_kronig(table, xi);
      CHECK(e > 1.0);
      CHECK(e < prev);
      prev = e;
    }
    CHECK(kramers_kronig(table, 1e21) - 1.0 < 1e-8);
  }

  SUBCASE("row order does not matter after ingestion") {
    std::ostringstream forward, shuffled;
    forward << "# synthetic\n";
    for (const auto& r : table.rows)
      forward << r[0] << " " << r[1] << "\n";
    std::vector<std::array<double, 2>> rows = table.rows;
    std::mt19937 rng(12345);
    std::shuffle(rows.begin(), rows.end(), rng);
    for (const auto& r : rows)
      shuffled << r[0] << " " << r[1] << "\n";
    std::istringstream fs(forward.str()), ss(shuffled.str());
    const auto a = OpticalDataTable::from_stream(fs, "a");
    const auto b = OpticalDataTable::from_stream(ss, "b");
    for (double xi : {1e13, 1e15, 1e17})
      CHECK(kramers_kronig(a, xi) == kramers_kronig(b, xi));
  }

  SUBCASE("domain and data errors") {
    CHECK_THROWS_AS(kramers_kronig(table, 0.0), DomainError);
    CHECK_THROWS_AS(kramers_kronig(OpticalDataTable{}, 1e15), DataError);
  }
}

TEST_CASE("kramers_kronig output is non-increasing for random tables") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> mag(0.0, 3.0);
  for (int trial = 0; trial < 8; ++trial) {
    OpticalDataTable t;
    t.provenance = "random";
    for (int i = 0; i < 30; ++i) {
      const double w = 1e12 * std::pow(10.0, 5.0 * i / 29.0);
      t.rows.push_back({w, mag(rng)});
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 12; ++i) {
      const double xi = 1e12 * std::pow(10.0, 5.0 * i / 12.0);
      const double e = kramers_kronig(t, xi);
      CHECK(e >= 1.0);
      CHECK(e <= prev * (1.0 + 1e-12));
      prev = e;
    }
  }
}

TEST_CASE("optical table ingestion") {
  SUBCASE("eV units convert the frequency column") {
    std::istringstream in("units: eV\n1.0 0.5\n2.0 0.25\n");
    const auto t = OpticalDataTable::from_stream(in, "test");
    CHECK(t.rows.size() == 2);
    CHECK(rel_err(t.rows[0][0], constants::ev_to_rad_s) < 1e-12);
    CHECK(t.rows[0][1] == 0.5);
  }
  SUBCASE("malformed rows name the line") {
    std::istringstream in("1e15 0.5\nnot a row\n");
    try {
      OpticalDataTable::from_stream(in, "test");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("duplicate abscissae are deduplicated with a warning") {
    std::istringstream in("1e15 0.5\n1e15 0.5\n2e15 0.25\n");
    const auto t = OpticalDataTable::from_stream(in, "test");
    CHECK(t.rows.size() == 2);
    REQUIRE(t.warnings.size() == 1);
    CHECK(t.warnings[0].find("deduplicated") != std::string::npos);
  }
  SUBCASE("negative absorption is rejected") {
    std::istringstream in("1e15 -0.5\n");
    CHECK_THROWS_AS(OpticalDataTable::from_stream(in, "test"), DataError);
  }
}

TEST_CASE("polarizability table ingestion with atomic units") {
  std::istringstream in("# alpha table\nunits: au\n1e14 300\n1e15 100\n");
  const auto t = PolarizabilityTable::from_stream(in, "test");
  REQUIRE(t.rows.size() == 2);
  CHECK(rel_err(t.rows[0][1], 300.0 * constants::polarizability_au) < 1e-12);
  const auto atom = AtomResponse::tabulated(t.rows);
  CHECK(atom.alpha(1e14) ==
        doctest::Approx(300.0 * constants::polarizability_au).epsilon(1e-12));
}

TEST_CASE("construction rejects unphysical response data") {
  CHECK_THROWS_AS(AtomResponse::tabulated({{1e14, 1.0}, {1e15, 2.0}}),
                  DataError); // increasing alpha
  CHECK_THROWS_AS(AtomResponse::tabulated({{1e15, 1.0}, {1e14, 2.0}}),
                  DataError); // unsorted
  CHECK_THROWS_AS(MaterialResponse::tabulated({{1e14, 0.9}, {1e15, 0.8}}),
                  DataError); // eps < 1
  CHECK_THROWS_AS(MaterialResponse::drude(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(MaterialResponse::lorentz({}), DomainError);
}
