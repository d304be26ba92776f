#include "lcp/lateral.hpp"

#include <cmath>

#include "lcp/errors.hpp"
#include "lcp/plane.hpp"

namespace lcp {

double LateralPotentialField::potential(double x) const {
  const double xr = std::remainder(x, period);
  double u = 0.0;
  for (std::size_t n = 0; n < term_energies.size(); ++n)
    if (term_energies[n] != 0.0)
      u += term_energies[n] * std::cos(n * k_c * xr);
  return u;
}

double LateralPotentialField::force(double x) const {
  const double xr = std::remainder(x, period);
  double f = 0.0;
  for (std::size_t n = 1; n < term_energies.size(); ++n)
    if (term_energies[n] != 0.0)
      f += term_energies[n] * n * k_c * std::sin(n * k_c * xr);
  return f;
}

double LateralPotentialField::curvature(double x) const {
  const double xr = std::remainder(x, period);
  double c = 0.0;
  for (std::size_t n = 1; n < term_energies.size(); ++n)
    if (term_energies[n] != 0.0)
      c -= term_energies[n] * (n * k_c) * (n * k_c) * std::cos(n * k_c * xr);
  return c;
}

LateralPotentialField make_lateral_field(const CorrugationProfile& profile,
                                         const ResponseKernel& kernel,
                                         double z) {
  if (!(z > 0.0))
    throw DomainError("make_lateral_field: z must be > 0");

  LateralPotentialField field;
  field.k_c = profile.wavevector();
  field.period = profile.period();
  field.z = z;
  field.warnings = profile.warnings();
  if (profile.max_abs_height() / z >= 0.25)
    field.warnings.push_back(
        "corrugation amplitude is not small against the separation "
        "(max|h|/z >= 0.25); first-order results are suspect");

  const auto& a = profile.fourier_coefficients();
  field.term_energies.resize(a.size(), 0.0);
  std::size_t last_nonzero = 0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] == 0.0)
      continue;
    field.term_energies[n] = a[n] * kernel.g(n * field.k_c, z);
    last_nonzero = n;
  }
  // A pure sinusoid is represented exactly; anything else is a truncation
  // whose remainder we estimate by the last retained term.
  field.truncation_remainder =
      profile.kind() == ProfileKind::sinusoid
          ? 0.0
          : std::abs(field.term_energies[last_nonzero]);

  // The exponential momentum cutoff should make the retained terms decay;
  // warn if the tail still carries as much weight as the head.
  std::size_t first_nonzero = 1;
  while (first_nonzero < field.term_energies.size() &&
         field.term_energies[first_nonzero] == 0.0)
    ++first_nonzero;
  if (last_nonzero > first_nonzero) {
    const std::size_t split = (first_nonzero + last_nonzero + 1) / 2;
    double head = 0.0, tail = 0.0;
    for (std::size_t n = first_nonzero; n <= last_nonzero; ++n) {
      const double mag = std::abs(field.term_energies[n]);
      if (n < split)
        head = std::max(head, mag);
      else
        tail = std::max(tail, mag);
    }
    if (tail > head)
      field.warnings.push_back("Fourier terms of the lateral potential are "
                               "not decaying; raise the harmonic cutoff or "
                               "reduce k_c z");
  }
  return field;
}

double lateral_potential(const CorrugationProfile& profile,
                         const ResponseKernel& kernel, double x, double z) {
  return make_lateral_field(profile, kernel, z).potential(x);
}

double lateral_force(const CorrugationProfile& profile,
                     const ResponseKernel& kernel, double x, double z) {
  return make_lateral_field(profile, kernel, z).force(x);
}

double pfa_lateral_potential(const CorrugationProfile& profile,
                             const AtomResponse& atom,
                             const MaterialResponse& material, double x,
                             double z, const QuadratureSpec& spec) {
  if (!(z > profile.max_abs_height()))
    throw DomainError("pfa_lateral_potential: separation must exceed the "
                      "corrugation amplitude");
  const double h = profile.height(x);
  return u0_plane(atom, material, z - h, spec).value -
         u0_plane(atom, material, z, spec).value;
}

} // namespace lcp
