#pragma once

#include <string>
#include <vector>

#include "lcp/lateral.hpp"

namespace lcp {

/// Trapped atom / condensate parameters for the dipole-oscillation
/// frequency-shift observables.
struct TrapConfiguration {
  double omega_x = 0.0;  // rad/s, trap frequency along the corrugation axis
  double mass = 0.0;     // kg
  double x0 = 0.0;       // m, equilibrium lateral position
  double z_cm = 0.0;     // m, center-of-mass height above the mean surface
  double delta_x = 0.0;  // m, oscillation amplitude (0: harmonic probe)
  double tf_radius = 0.0;// m, Thomas-Fermi radius (0: point-like atom)

  void validate() const;
};

/// Relative frequency shift gamma = (omega_CP,x - omega_x)/omega_x and the
/// factors it decomposes into: gamma = gamma_harmonic * finite_size_factor
/// * (1 - anharmonic_factor).
struct ShiftResult {
  double gamma = 0.0;
  double gamma_harmonic = 0.0;    // single-atom, infinitesimal amplitude
  double gamma_first_order = 0.0; // U'' / (2 m omega_x^2)
  double finite_size_factor = 1.0;
  double anharmonic_factor = 0.0; // k_c^2 delta_x^2 / 8
  std::vector<std::string> flags;
};

/// Shift of a single trapped atom at (x0, z_cm). The lateral curvature is
/// the analytic second x-derivative of the Fourier series; for the
/// pfa-specular kernel it instead comes from the local-separation potential
/// U0(z - h(x)), which is exactly flat above a plateau.
ShiftResult gamma_single(const CorrugationProfile& profile,
                         const ResponseKernel& kernel,
                         const TrapConfiguration& trap,
                         const QuadratureSpec& spec = default_quadrature_1d());

/// Finite-size condensate shift: the single-atom gamma averaged over the
/// two-dimensional Thomas-Fermi density of radius tf_radius centered at
/// (x0, z_cm). Reduces to gamma_single as the radius goes to zero.
ShiftResult gamma_bec(const CorrugationProfile& profile,
                      const ResponseKernel& kernel,
                      const TrapConfiguration& trap,
                      const QuadratureSpec& spec = default_quadrature_2d());

/// Fractional decrease of the relative shift from a finite oscillation
/// amplitude: k_c^2 delta_x^2 / 8. Pure geometry, independent of kernel
/// and material.
double anharmonic_factor(double k_c, double delta_x);

/// Normalized two-dimensional Thomas-Fermi density,
///   n(x, z) = (15 / 6 pi) (R^2 - x^2 - z^2)^{3/2} / R^5
/// inside the disk, 0 outside.
double thomas_fermi_density(double x, double z, double radius);

struct Detectability {
  bool detectable = false;
  double margin = 0.0; // |gamma| / sensitivity
};

/// |gamma| >= sensitivity, boundary inclusive.
Detectability detectability(double gamma, double sensitivity);

} // namespace lcp
