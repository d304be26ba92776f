#include "lcp/plane.hpp"

#include <algorithm>
#include <cmath>

#include "lcp/constants.hpp"
#include "lcp/errors.hpp"

namespace lcp {

namespace {
constexpr double hbar = constants::hbar;
constexpr double c0 = constants::c_light;
constexpr double eps0 = constants::epsilon0;
constexpr double pi = constants::pi;
} // namespace

const char* to_string(PotentialRegime r) {
  switch (r) {
  case PotentialRegime::vdw_asymptote:
    return "vdW-asymptote";
  case PotentialRegime::cp_asymptote:
    return "CP-asymptote";
  case PotentialRegime::full_integral:
    return "full-integral";
  }
  return "?";
}

PotentialRegime classify_regime(const AtomResponse& atom, double z) {
  const double omega = atom.frequency_scale();
  if (omega <= 0.0)
    return PotentialRegime::cp_asymptote; // static response: retarded limit
  const double lambda_atom = c0 / omega;
  if (z < 0.01 * lambda_atom)
    return PotentialRegime::vdw_asymptote;
  if (z > 100.0 * lambda_atom)
    return PotentialRegime::cp_asymptote;
  return PotentialRegime::full_integral;
}

double u0_vdw_perfect(const AtomResponse& atom, double z) {
  if (!(z > 0.0))
    throw DomainError("u0_vdw_perfect: z must be > 0");
  const double integral = atom.integrated_alpha();
  return -hbar * integral / (16.0 * pi * pi * eps0 * z * z * z);
}

double u0_cp_perfect(const AtomResponse& atom, double z) {
  if (!(z > 0.0))
    throw DomainError("u0_cp_perfect: z must be > 0");
  return -3.0 * hbar * c0 * atom.alpha_static() /
         (32.0 * pi * pi * eps0 * z * z * z * z);
}

FresnelAmplitudes fresnel_amplitudes(const MaterialResponse& material,
                                     double xi, double kappa) {
  if (material.is_perfect())
    return {-1.0, 1.0};
  // q = (eps - 1) xi^2 / c^2 >= 0; kappa_m = sqrt(kappa^2 + q).
  // The rationalized forms below stay accurate for eps -> 1 and stay finite
  // for eps -> inf (Drude at small xi).
  const double q = material.susceptibility_q(xi);
  const double eps = material.epsilon(xi);
  const double km = std::sqrt(kappa * kappa + q);
  const double te = -q / ((kappa + km) * (kappa + km));
  const double km_over_eps = std::isinf(eps) ? 0.0 : km / eps;
  const double inv_e2 = std::isinf(eps) ? 0.0 : 1.0 / (eps * eps);
  const double denom = (kappa + km_over_eps) * (kappa + km_over_eps);
  const double tm =
      (kappa * kappa * (1.0 - inv_e2) - q * inv_e2) / denom;
  return {te, tm};
}

PlanePotentialResult u0_plane(const AtomResponse& atom,
                              const MaterialResponse& material, double z,
                              const QuadratureSpec& spec) {
  if (!(z > 0.0))
    throw DomainError("u0_plane: z must be > 0");
  spec.validate();

  QuadratureSpec inner = spec;
  inner.rel_tol = std::max(spec.rel_tol * 0.1, 1e-12);

  // 1/2 Int_{xi/c}^inf d kappa e^{-2 kappa z}
  //     [ (2 kappa^2 - xi^2/c^2) r_tm - (xi^2/c^2) r_te ]
  const auto momentum_integral = [&](double xi) {
    const double xic = xi / c0;
    // the whole kappa integral is bounded by e^{-2 xi z / c} times a
    // polynomial; past ~e^-600 it is pure underflow noise
    if (2.0 * xic * z > 600.0)
      return 0.0;
    const double xic2 = xic * xic;
    const auto integrand = [&](double u) {
      const double kappa = xic + u;
      const double damping = std::exp(-2.0 * kappa * z);
      if (damping == 0.0)
        return 0.0;
      const FresnelAmplitudes r = fresnel_amplitudes(material, xi, kappa);
      return 0.5 * damping *
             ((2.0 * kappa * kappa - xic2) * r.tm - xic2 * r.te);
    };
    return integrate_semi_infinite(integrand, inner, 0.5 / z);
  };

  const double atom_scale = atom.frequency_scale();
  double scale = 0.5 * c0 / z;
  if (atom_scale > 0.0)
    scale = std::min(scale, atom_scale);

  const double outer = integrate_semi_infinite(
      [&](double xi) { return atom.alpha(xi) * momentum_integral(xi); }, spec,
      scale);

  const double value = -hbar / (4.0 * pi * pi * eps0) * outer;
  return {value, classify_regime(atom, z), spec.rel_tol * std::abs(value)};
}

double pfa_reference(const AtomResponse& atom, const MaterialResponse& material,
                     double z, const QuadratureSpec& spec) {
  if (!(z > 0.0))
    throw DomainError("pfa_reference: z must be > 0");
  const auto u0 = [&](double zz) {
    return u0_plane(atom, material, zz, spec).value;
  };
  return -differentiate(u0, z, 0.25 * z);
}

} // namespace lcp
