#include "lcp/trap.hpp"

#include <cmath>

#include "lcp/constants.hpp"
#include "lcp/errors.hpp"
#include "lcp/plane.hpp"

namespace lcp {

namespace {
constexpr double pi = constants::pi;

// Lateral curvature of the interaction at (x, z) for the given kernel.
double lateral_curvature(const CorrugationProfile& profile,
                         const ResponseKernel& kernel, double x, double z,
                         const QuadratureSpec& spec) {
  if (kernel.kind() != KernelKind::pfa_specular)
    return make_lateral_field(profile, kernel, z).curvature(x);

  // Proximity-force route: U(x) = U0(z - h(x)), so
  //   d2U/dx2 = h'(x)^2 U0''(z - h) - h''(x) U0'(z - h).
  // Above a plateau h' = h'' = 0 and the curvature vanishes identically.
  const double hp = profile.slope(x);
  const double hpp = profile.curvature(x);
  if (hp == 0.0 && hpp == 0.0)
    return 0.0;
  const auto& material = kernel.material();
  const double zloc = z - profile.height(x);
  if (!(zloc > 0.0))
    throw DomainError("gamma: local separation is not positive");
  const auto u0 = [&](double zz) {
    return u0_plane(kernel.atom(), *material, zz, spec).value;
  };
  const double scale = 0.2 * zloc;
  double curv = 0.0;
  if (hp != 0.0)
    curv += hp * hp * second_derivative(u0, zloc, scale);
  if (hpp != 0.0)
    curv -= hpp * differentiate(u0, zloc, scale);
  return curv;
}

ShiftResult shift_from_curvature(double curvature, const CorrugationProfile& profile,
                                 const TrapConfiguration& trap) {
  ShiftResult r;
  const double stiffness = trap.mass * trap.omega_x * trap.omega_x;
  const double ratio = curvature / stiffness;
  if (1.0 + ratio <= 0.0)
    throw InstabilityError("gamma: Casimir-Polder curvature destabilizes the "
                           "trap (m omega_x^2 + U'' <= 0)");
  r.gamma_harmonic = std::sqrt(1.0 + ratio) - 1.0;
  r.gamma_first_order = 0.5 * ratio;
  if (std::abs(ratio) > 0.1)
    r.flags.push_back("curvature is not small against the trap stiffness; "
                      "the perturbative picture is strained");
  r.anharmonic_factor = anharmonic_factor(profile.wavevector(), trap.delta_x);
  if (profile.wavevector() * trap.delta_x >= 1.0)
    r.flags.push_back("oscillation amplitude comparable to the corrugation "
                      "period; the quadratic anharmonic estimate is invalid");
  r.finite_size_factor = 1.0;
  r.gamma = r.gamma_harmonic * (1.0 - r.anharmonic_factor);
  return r;
}

} // namespace

void TrapConfiguration::validate() const {
  if (!(omega_x > 0.0))
    throw DomainError("TrapConfiguration: omega_x must be > 0");
  if (!(mass > 0.0))
    throw DomainError("TrapConfiguration: mass must be > 0");
  if (!(tf_radius >= 0.0))
    throw DomainError("TrapConfiguration: Thomas-Fermi radius must be >= 0");
  if (!(z_cm > tf_radius))
    throw DomainError("TrapConfiguration: condensate touches the surface "
                      "(z_cm must exceed the Thomas-Fermi radius)");
  if (!(delta_x >= 0.0))
    throw DomainError("TrapConfiguration: oscillation amplitude must be >= 0");
}

double anharmonic_factor(double k_c, double delta_x) {
  if (!(k_c >= 0.0) || !(delta_x >= 0.0))
    throw DomainError("anharmonic_factor: arguments must be >= 0");
  const double phase = k_c * delta_x;
  return phase * phase / 8.0;
}

double thomas_fermi_density(double x, double z, double radius) {
  if (!(radius > 0.0))
    throw DomainError("thomas_fermi_density: radius must be > 0");
  const double r2 = radius * radius - x * x - z * z;
  if (r2 <= 0.0)
    return 0.0;
  return (15.0 / (6.0 * pi)) * r2 * std::sqrt(r2) /
         (radius * radius * radius * radius * radius);
}

Detectability detectability(double gamma, double sensitivity) {
  if (!(sensitivity > 0.0))
    throw DomainError("detectability: sensitivity must be > 0");
  const double margin = std::abs(gamma) / sensitivity;
  return {margin >= 1.0, margin};
}

ShiftResult gamma_single(const CorrugationProfile& profile,
                         const ResponseKernel& kernel,
                         const TrapConfiguration& trap,
                         const QuadratureSpec& spec) {
  trap.validate();
  const double curvature =
      lateral_curvature(profile, kernel, trap.x0, trap.z_cm, spec);
  ShiftResult r = shift_from_curvature(curvature, profile, trap);
  if (profile.max_abs_height() / trap.z_cm >= 0.25)
    r.flags.push_back("corrugation amplitude is not small against the "
                      "separation (max|h|/z >= 0.25)");
  return r;
}

ShiftResult gamma_bec(const CorrugationProfile& profile,
                      const ResponseKernel& kernel,
                      const TrapConfiguration& trap,
                      const QuadratureSpec& spec) {
  trap.validate();
  if (trap.tf_radius == 0.0)
    return gamma_single(profile, kernel, trap);

  const double stiffness = trap.mass * trap.omega_x * trap.omega_x;
  const double radius = trap.tf_radius;

  const auto gamma0_at = [&](double dx, double dz) {
    const double curvature = lateral_curvature(
        profile, kernel, trap.x0 + dx, trap.z_cm + dz, default_quadrature_1d());
    const double ratio = curvature / stiffness;
    if (1.0 + ratio <= 0.0)
      throw InstabilityError("gamma_bec: trap destabilized inside the "
                             "condensate");
    return std::sqrt(1.0 + ratio) - 1.0;
  };

  const double averaged = integrate_2d_disk(
      [&](double dx, double dz) {
        const double density = thomas_fermi_density(dx, dz, radius);
        return density == 0.0 ? 0.0 : density * gamma0_at(dx, dz);
      },
      radius, spec);

  TrapConfiguration center = trap;
  center.tf_radius = 0.0;
  ShiftResult r = gamma_single(profile, kernel, center);
  if (r.gamma_harmonic != 0.0) {
    r.finite_size_factor = averaged / r.gamma_harmonic;
  } else {
    r.finite_size_factor = 1.0;
    if (averaged != 0.0)
      r.flags.push_back("finite-size factor undefined (central shift is 0); "
                        "gamma carries the averaged value directly");
  }
  r.gamma = averaged * (1.0 - r.anharmonic_factor);
  return r;
}

} // namespace lcp
