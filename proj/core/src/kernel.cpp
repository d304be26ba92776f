#include "lcp/kernel.hpp"

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

double kernel_shape_vdw(double corrugation_phase) {
  const double z = corrugation_phase;
  if (!(z >= 0.0))
    throw DomainError("kernel_shape_vdw: argument must be >= 0");
  if (z < 1e-4)
    return 12.0; // removable limit: Z^2 [2 K_2 + Z K_3] -> 12 - 2 Z^2 + ...
  return z * z * (2.0 * bessel_k(2, z) + z * bessel_k(3, z));
}

double kernel_shape_cp(double corrugation_phase) {
  const double z = corrugation_phase;
  if (!(z >= 0.0))
    throw DomainError("kernel_shape_cp: argument must be >= 0");
  return std::exp(-z) *
         (1.0 + z + 16.0 * z * z / 45.0 + z * z * z / 45.0);
}

double g_perfect_vdw(const AtomResponse& atom, double k, double z) {
  if (!(z > 0.0))
    throw DomainError("g_perfect_vdw: z must be > 0");
  if (!(k >= 0.0))
    throw DomainError("g_perfect_vdw: k must be >= 0");
  const double integral = atom.integrated_alpha();
  return -hbar * kernel_shape_vdw(k * z) * integral /
         (64.0 * pi * pi * eps0 * z * z * z * z);
}

double g_perfect_cp(const AtomResponse& atom, double k, double z) {
  if (!(z > 0.0))
    throw DomainError("g_perfect_cp: z must be > 0");
  if (!(k >= 0.0))
    throw DomainError("g_perfect_cp: k must be >= 0");
  return -3.0 * hbar * c0 * atom.alpha_static() * kernel_shape_cp(k * z) /
         (8.0 * pi * pi * eps0 * z * z * z * z * z);
}

double LateralVector::norm() const { return std::hypot(x, y); }

double SpecularLimitProvider::amplitude(double xi, const LateralVector& k_out,
                                        const LateralVector& k_in,
                                        Polarization out,
                                        Polarization in) const {
  if (out != in)
    return 0.0; // no polarization mixing in the specular limit
  const double kbar = 0.5 * (k_out.norm() + k_in.norm());
  const double kappa = std::hypot(xi / c0, kbar);
  const FresnelAmplitudes r = fresnel_amplitudes(material_, xi, kappa);
  if (out == Polarization::te)
    return 2.0 * kappa * r.te;
  const double contraction = 2.0 * kappa * kappa * c0 * c0 / (xi * xi) - 1.0;
  return -2.0 * kappa * contraction * r.tm;
}

double g_general(const AtomResponse& atom, const NonspecularProvider& provider,
                 double k, double z, const QuadratureSpec& spec) {
  if (!(z > 0.0))
    throw DomainError("g_general: z must be > 0");
  if (!(k >= 0.0))
    throw DomainError("g_general: k must be >= 0");
  spec.validate();

  QuadratureSpec mid = spec;
  mid.rel_tol = std::max(spec.rel_tol * 0.3, 1e-12);
  QuadratureSpec angular = spec;
  angular.rel_tol = std::max(spec.rel_tol * 0.1, 1e-12);

  constexpr Polarization pols[2] = {Polarization::te, Polarization::tm};

  const auto momentum_integral = [&](double xi) {
    const double xic = xi / c0;
    // kappa' + kappa'' >= 2 xi / c, so the momentum integral underflows
    // wholesale once that exponent passes ~600
    if (2.0 * xic * z > 600.0)
      return 0.0;
    // d^2 k' = k' dk' dtheta; theta in [0, pi] doubled by mirror symmetry
    // of |k' - k| about the corrugation axis.
    const auto radial = [&](double kp) {
      const double kappa_out = std::hypot(xic, kp);
      const auto over_angle = [&](double theta) {
        const LateralVector k_out{kp * std::cos(theta), kp * std::sin(theta)};
        const LateralVector k_in{k_out.x - k, k_out.y};
        const double kappa_in = std::hypot(xic, k_in.norm());
        const double damping = std::exp(-(kappa_out + kappa_in) * z);
        if (damping == 0.0)
          return 0.0;
        double sum = 0.0;
        for (Polarization p_out : pols)
          for (Polarization p_in : pols)
            sum += provider.amplitude(xi, k_out, k_in, p_out, p_in);
        return sum * damping / (2.0 * kappa_in);
      };
      return kp * 2.0 * integrate_finite(over_angle, 0.0, pi, angular);
    };
    return integrate_semi_infinite(radial, mid, 0.5 / z) / (4.0 * pi * pi);
  };

  const double atom_scale = atom.frequency_scale();
  double scale = 0.5 * c0 / z;
  if (atom_scale > 0.0)
    scale = std::min(scale, atom_scale);

  const double outer = integrate_semi_infinite(
      [&](double xi) {
        return xi * xi * atom.alpha(xi) * momentum_integral(xi);
      },
      spec, scale);

  return hbar / (c0 * c0 * eps0) * outer / (2.0 * pi);
}

// ---------------------------------------------------------------------------
// ResponseKernel
// ---------------------------------------------------------------------------

const char* to_string(KernelKind k) {
  switch (k) {
  case KernelKind::perfect_vdw:
    return "perfect-vdw";
  case KernelKind::perfect_cp:
    return "perfect-cp";
  case KernelKind::pfa_specular:
    return "pfa-specular";
  case KernelKind::custom_provider:
    return "custom-provider";
  }
  return "?";
}

ResponseKernel ResponseKernel::perfect_vdw(AtomResponse atom) {
  ResponseKernel k;
  k.kind_ = KernelKind::perfect_vdw;
  k.integrated_alpha_ = atom.integrated_alpha(); // throws for static atoms
  k.atom_ = std::move(atom);
  return k;
}

ResponseKernel ResponseKernel::perfect_cp(AtomResponse atom) {
  ResponseKernel k;
  k.kind_ = KernelKind::perfect_cp;
  k.atom_ = std::move(atom);
  return k;
}

ResponseKernel ResponseKernel::pfa_specular(AtomResponse atom,
                                            MaterialResponse material,
                                            QuadratureSpec spec) {
  ResponseKernel k;
  k.kind_ = KernelKind::pfa_specular;
  k.atom_ = std::move(atom);
  k.material_ = std::move(material);
  k.spec_ = spec;
  return k;
}

ResponseKernel ResponseKernel::custom(AtomResponse atom,
                                      std::shared_ptr<NonspecularProvider> provider,
                                      QuadratureSpec spec) {
  if (!provider)
    throw DomainError("ResponseKernel: null provider");
  ResponseKernel k;
  k.kind_ = KernelKind::custom_provider;
  k.atom_ = std::move(atom);
  k.spec_ = spec;
  if (!provider->thread_safe())
    k.provider_guard_ = std::make_shared<std::mutex>();
  k.provider_ = std::move(provider);
  return k;
}

double ResponseKernel::g(double k, double z) const {
  switch (kind_) {
  case KernelKind::perfect_vdw:
    if (!(z > 0.0))
      throw DomainError("g: z must be > 0");
    if (!(k >= 0.0))
      throw DomainError("g: k must be >= 0");
    return -hbar * kernel_shape_vdw(k * z) * integrated_alpha_ /
           (64.0 * pi * pi * eps0 * z * z * z * z);
  case KernelKind::perfect_cp:
    return g_perfect_cp(atom_, k, z);
  case KernelKind::pfa_specular:
    if (!(k >= 0.0))
      throw DomainError("g: k must be >= 0");
    return pfa_reference(atom_, *material_, z, spec_);
  case KernelKind::custom_provider: {
    if (provider_guard_) {
      std::lock_guard<std::mutex> lock(*provider_guard_);
      return g_general(atom_, *provider_, k, z, spec_);
    }
    return g_general(atom_, *provider_, k, z, spec_);
  }
  }
  throw ModelError("g: unknown kernel kind");
}

double ResponseKernel::rho(double k, double z) const {
  if (!(k >= 0.0))
    throw DomainError("rho: k must be >= 0");
  if (k == 0.0 || kind_ == KernelKind::pfa_specular)
    return 1.0;
  const double denom = g(0.0, z);
  if (denom == 0.0)
    throw ModelError("rho: proximity-force reference vanishes");
  return g(k, z) / denom;
}

std::string ResponseKernel::describe() const {
  std::string s = to_string(kind_);
  if (kind_ == KernelKind::custom_provider && provider_)
    s += " (" + provider_->describe() + ")";
  return s;
}

RegimeAdvice recommend_regime(const AtomResponse& atom, double z) {
  if (!(z > 0.0))
    throw DomainError("recommend_regime: z must be > 0");
  const double omega = atom.frequency_scale();
  const double lambda = omega > 0.0 ? c0 / omega : 0.0;
  return {lambda, z, classify_regime(atom, z)};
}

} // namespace lcp
