#pragma once

#include <string>
#include <vector>

#include "lcp/kernel.hpp"
#include "lcp/profile.hpp"

namespace lcp {

/// First-order lateral Casimir-Polder potential above a periodic profile,
///   U1(x) = sum_n a_n cos(n k_c x) g(n k_c, z),
/// precomputed at a fixed height so the x-dependence (and its derivatives)
/// cost one trigonometric sum.
struct LateralPotentialField {
  std::vector<double> term_energies; // c_n = a_n g(n k_c, z), J
  double k_c = 0.0;
  double period = 0.0;
  double z = 0.0;
  double truncation_remainder = 0.0; // |last retained nonzero term|, J
  std::vector<std::string> warnings;

  double potential(double x) const; // U1(x), J
  double force(double x) const;     // -dU1/dx, N
  double curvature(double x) const; // d2U1/dx2, J/m^2
};

LateralPotentialField make_lateral_field(const CorrugationProfile& profile,
                                         const ResponseKernel& kernel,
                                         double z);

/// U1(x, z) with a freshly built field. Prefer make_lateral_field when
/// sweeping x at fixed height.
double lateral_potential(const CorrugationProfile& profile,
                         const ResponseKernel& kernel, double x, double z);

/// Lateral force -dU1/dx = sum_n a_n n k_c sin(n k_c x) g(n k_c, z).
double lateral_force(const CorrugationProfile& profile,
                     const ResponseKernel& kernel, double x, double z);

/// Proximity-force prediction for the x-dependent part of the interaction:
/// U0(z - h(x)) - U0(z) with the exact local separation and the full plane
/// potential of (atom, material). Requires z > max |h|.
double pfa_lateral_potential(const CorrugationProfile& profile,
                             const AtomResponse& atom,
                             const MaterialResponse& material, double x,
                             double z,
                             const QuadratureSpec& spec = default_quadrature_1d());

} // namespace lcp
