#pragma once

#include "lcp/numerics.hpp"
#include "lcp/response.hpp"

namespace lcp {

enum class PotentialRegime { vdw_asymptote, cp_asymptote, full_integral };

const char* to_string(PotentialRegime r);

/// z_A < 0.01 c/omega_A -> van der Waals, z_A > 100 c/omega_A -> retarded
/// Casimir-Polder, full integral in between. A static-only atom has no
/// frequency scale and always classifies as retarded.
PotentialRegime classify_regime(const AtomResponse& atom, double z);

struct PlanePotentialResult {
  double value;           // J, negative (attractive)
  PotentialRegime regime; // which asymptote is valid at this separation
  double estimated_error; // J
};

/// Non-retarded perfect-reflector asymptote,
///   U0(z) = -hbar / (16 pi^2 eps0 z^3) * Int_0^inf alpha(i xi) d xi.
double u0_vdw_perfect(const AtomResponse& atom, double z);

/// Retarded perfect-reflector asymptote,
///   U0(z) = -3 hbar c alpha(0) / (32 pi^2 eps0 z^4).
double u0_cp_perfect(const AtomResponse& atom, double z);

/// Fresnel reflection amplitudes at imaginary frequency xi for lateral
/// momentum such that kappa = sqrt(xi^2/c^2 + k^2). Perfect reflector:
/// te = -1, tm = +1.
struct FresnelAmplitudes {
  double te;
  double tm;
};
FresnelAmplitudes fresnel_amplitudes(const MaterialResponse& material,
                                     double xi, double kappa);

/// Full specular-reflection (Lifshitz-type) imaginary-frequency integral for
/// the atom-plane potential:
///   U0 = -(hbar / 4 pi^2 eps0) Int_0^inf d xi alpha(i xi)
///        * 1/2 Int_{xi/c}^inf d kappa e^{-2 kappa z}
///          [ (2 kappa^2 - xi^2/c^2) r_tm - (xi^2/c^2) r_te ].
PlanePotentialResult u0_plane(const AtomResponse& atom,
                              const MaterialResponse& material, double z,
                              const QuadratureSpec& spec = default_quadrature_1d());

/// -dU0/dz at z via Ridders differentiation of u0_plane. This is the
/// proximity-force value g(k -> 0, z); negative for attractive potentials.
double pfa_reference(const AtomResponse& atom, const MaterialResponse& material,
                     double z,
                     const QuadratureSpec& spec = default_quadrature_1d());

} // namespace lcp
