#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "lcp/numerics.hpp"

namespace lcp {

// ---------------------------------------------------------------------------
// Atomic dynamic polarizability alpha(i xi) on the imaginary frequency axis.
// SI throughout: alpha carries C m^2 / V, xi carries rad/s.
// ---------------------------------------------------------------------------

enum class AtomKind { static_only, single_oscillator, tabulated };

class AtomResponse {
public:
  /// alpha(i xi) = alpha0 for all xi. Has no finite integrated polarizability.
  static AtomResponse static_polarizability(double alpha0, double mass = 0.0);

  /// alpha(i xi) = alpha0 / (1 + xi^2 / omega_a^2).
  static AtomResponse single_oscillator(double alpha0, double omega_a,
                                        double mass = 0.0);

  /// Monotone log-log interpolation of (xi, alpha) samples; continues to
  /// alpha0 below the first sample and decays like xi^-tail_exponent above
  /// the last. Pass alpha0 <= 0 to reuse the first sample value.
  static AtomResponse tabulated(std::vector<std::array<double, 2>> samples,
                                double alpha0 = 0.0, double mass = 0.0,
                                double tail_exponent = 2.0);

  AtomKind kind() const { return kind_; }
  double mass() const { return mass_; }
  double alpha_static() const { return alpha0_; }

  /// Dynamic polarizability at imaginary frequency xi >= 0.
  double alpha(double xi) const;

  /// Oscillator frequency omega_A; defined for the single-oscillator kind.
  double oscillator_frequency() const;

  /// Characteristic frequency where alpha has decayed appreciably; used to
  /// scale quadrature transforms. 0 means "no scale" (static kind).
  double frequency_scale() const;

  /// Integral of alpha(i xi) over xi in (0, inf). Closed form for the
  /// oscillator kind, quadrature plus analytic head/tail for tables.
  /// Throws ModelError for the static kind (divergent).
  double integrated_alpha(
      const QuadratureSpec& spec = default_quadrature_1d()) const;

  std::string describe() const;

private:
  AtomResponse() = default;

  AtomKind kind_ = AtomKind::static_only;
  double alpha0_ = 0.0;
  double omega_a_ = 0.0;
  double mass_ = 0.0;
  double tail_exponent_ = 2.0;
  std::vector<std::array<double, 2>> samples_;
  std::vector<double> log_xi_, log_alpha_, slope_; // monotone cubic data
};

// ---------------------------------------------------------------------------
// Bulk permittivity eps(i xi) of the surface material.
// ---------------------------------------------------------------------------

enum class MaterialKind { perfect_reflector, drude, lorentz, tabulated };

struct LorentzOscillator {
  double strength; // rad^2/s^2
  double omega0;   // rad/s
  double damping;  // rad/s
};

class MaterialResponse {
public:
  static MaterialResponse perfect_reflector();
  /// eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma)).
  static MaterialResponse drude(double omega_p, double gamma);
  /// eps(i xi) = 1 + sum strength / (omega0^2 + xi^2 + damping xi).
  static MaterialResponse lorentz(std::vector<LorentzOscillator> oscillators);
  /// Interpolated imaginary-axis samples (xi, eps), eps > 1, non-increasing.
  static MaterialResponse tabulated(std::vector<std::array<double, 2>> samples);

  MaterialKind kind() const { return kind_; }
  bool is_perfect() const { return kind_ == MaterialKind::perfect_reflector; }

  /// eps(i xi) for xi > 0. Throws ModelError for the perfect reflector,
  /// whose response lives in dedicated reflection-amplitude code paths.
  double epsilon(double xi) const;

  /// (eps(i xi) - 1) * xi^2 / c^2, computed without overflow even where
  /// eps itself overflows (Drude at small xi). This is the quantity the
  /// Fresnel amplitudes actually need.
  double susceptibility_q(double xi) const;

  std::string describe() const;

private:
  MaterialResponse() = default;

  MaterialKind kind_ = MaterialKind::perfect_reflector;
  double omega_p_ = 0.0, gamma_ = 0.0;
  std::vector<LorentzOscillator> oscillators_;
  std::vector<std::array<double, 2>> samples_;
  std::vector<double> log_xi_, log_chi_, slope_; // interpolates log(eps - 1)
};

// ---------------------------------------------------------------------------
// Tabulated optical data on the real frequency axis and its transform to
// the imaginary axis.
// ---------------------------------------------------------------------------

/// Rows of (omega [rad/s], eps''(omega)); sorted, deduplicated, eps'' >= 0.
/// The text format is two whitespace-separated numeric columns, '#' comment
/// lines, and an optional "units: eV" header switching the first column to
/// electron-volts.
struct OpticalDataTable {
  std::vector<std::array<double, 2>> rows;
  std::string provenance;
  // Extrapolation policies for the dispersion integral: constant eps''
  // below the first row, eps'' ~ omega^-high_freq_exponent above the last.
  double high_freq_exponent = 3.0;
  std::vector<std::string> warnings;

  static OpticalDataTable from_stream(std::istream& in,
                                      const std::string& provenance,
                                      const std::string& units_override = "");
  static OpticalDataTable from_file(const std::string& path,
                                    const std::string& units_override = "");
};

/// eps(i xi) = 1 + (2/pi) Int_0^inf omega eps''(omega) / (omega^2 + xi^2)
/// d omega, with the table extended by the policies recorded on it.
double kramers_kronig(const OpticalDataTable& table, double xi,
                      const QuadratureSpec& spec = default_quadrature_1d());

/// Rows of (xi [rad/s], alpha [C m^2/V]); same text format, with an optional
/// "units: au" header converting the polarizability column from atomic units.
struct PolarizabilityTable {
  std::vector<std::array<double, 2>> rows;
  std::string provenance;
  std::vector<std::string> warnings;

  static PolarizabilityTable from_stream(std::istream& in,
                                         const std::string& provenance,
                                         const std::string& units_override = "");
  static PolarizabilityTable from_file(const std::string& path,
                                       const std::string& units_override = "");
};

} // namespace lcp
