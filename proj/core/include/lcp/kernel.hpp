#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "lcp/numerics.hpp"
#include "lcp/plane.hpp"
#include "lcp/response.hpp"

namespace lcp {

// ---------------------------------------------------------------------------
// Closed-form shape functions of the perfect-reflector corrugation response.
// ---------------------------------------------------------------------------

/// Non-retarded shape G(Z) = Z^2 [2 K_2(Z) + Z K_3(Z)]; the removable
/// Z -> 0 limit (value 12) is substituted below Z = 1e-4 to avoid Bessel
/// cancellation. Monotone decreasing, ~ sqrt(pi/2) Z^(5/2) e^-Z at large Z.
double kernel_shape_vdw(double corrugation_phase);

/// Retarded shape F(Z) = e^-Z (1 + Z + 16 Z^2/45 + Z^3/45); F(0) = 1.
double kernel_shape_cp(double corrugation_phase);

/// Non-retarded response function (valid for z << c/omega_A):
///   g(k, z) = -hbar G(k z) / (64 pi^2 eps0 z^4) * Int_0^inf alpha(i xi) dxi.
double g_perfect_vdw(const AtomResponse& atom, double k, double z);

/// Retarded response function (valid for z >> c/omega_A):
///   g(k, z) = -3 hbar c alpha(0) / (8 pi^2 eps0 z^5) * F(k z).
double g_perfect_cp(const AtomResponse& atom, double k, double z);

// ---------------------------------------------------------------------------
// Pluggable first-order nonspecular amplitudes.
// ---------------------------------------------------------------------------

enum class Polarization { te, tm };

struct LateralVector {
  double x = 0.0;
  double y = 0.0;
  double norm() const;
};

/// Supplier of the first-order nonspecular scattering amplitudes of the
/// corrugated surface, evaluated at imaginary frequency. The returned value
/// is the real product of the polarization contraction e+_out . e-_in with
/// the amplitude R_{out,in}(k_out, k_in; i xi); the framework applies the
/// propagation weight exp(-(kappa_out + kappa_in) z) / (2 kappa_in), the
/// polarization-pair sum and the frequency/momentum integrals. Units and
/// signs are pinned by one rule: a provider reduced to its specular limit
/// must reproduce -dU0/dz (see SpecularLimitProvider and the tests).
class NonspecularProvider {
public:
  virtual ~NonspecularProvider() = default;
  virtual double amplitude(double xi, const LateralVector& k_out,
                           const LateralVector& k_in, Polarization out,
                           Polarization in) const = 0;
  /// Providers that are safe for concurrent evaluation should say so;
  /// otherwise the framework serializes calls.
  virtual bool thread_safe() const { return false; }
  virtual std::string describe() const { return "custom-provider"; }
};

/// Specular limit of the nonspecular amplitudes: plane Fresnel reflection
/// evaluated at the mean lateral momentum. Exact only at k -> 0, where the
/// response reduces to the proximity-force value.
class SpecularLimitProvider final : public NonspecularProvider {
public:
  explicit SpecularLimitProvider(MaterialResponse material)
      : material_(std::move(material)) {}
  double amplitude(double xi, const LateralVector& k_out,
                   const LateralVector& k_in, Polarization out,
                   Polarization in) const override;
  bool thread_safe() const override { return true; }
  std::string describe() const override { return "specular-limit"; }

private:
  MaterialResponse material_;
};

/// Double imaginary-frequency / lateral-momentum integral of the first-order
/// response function for a provider-supplied amplitude set:
///   g(k, z) = hbar/(c^2 eps0) Int_0^inf d xi/(2 pi) xi^2 alpha(i xi)
///             Int d^2 k' /(2 pi)^2 sum_pp' A(xi, k', k'-k; p, p')
///             e^{-(kappa' + kappa'') z} / (2 kappa'').
double g_general(const AtomResponse& atom, const NonspecularProvider& provider,
                 double k, double z, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// ResponseKernel: a polymorphic g(k, z) evaluator.
// ---------------------------------------------------------------------------

enum class KernelKind { perfect_vdw, perfect_cp, pfa_specular, custom_provider };

const char* to_string(KernelKind k);

class ResponseKernel {
public:
  static ResponseKernel perfect_vdw(AtomResponse atom);
  static ResponseKernel perfect_cp(AtomResponse atom);
  /// k-independent proximity-force kernel g(k, z) = -dU0/dz built on the
  /// full plane potential of (atom, material).
  static ResponseKernel pfa_specular(AtomResponse atom, MaterialResponse material,
                                     QuadratureSpec spec = default_quadrature_1d());
  static ResponseKernel custom(AtomResponse atom,
                               std::shared_ptr<NonspecularProvider> provider,
                               QuadratureSpec spec = {1e-5, 0.0, 2000});

  KernelKind kind() const { return kind_; }
  const AtomResponse& atom() const { return atom_; }
  /// Material of the pfa-specular kind; nullopt otherwise.
  const std::optional<MaterialResponse>& material() const { return material_; }

  /// Response function g(k, z) in newtons; negative for all shipped kinds.
  double g(double k, double z) const;

  /// Deviation from the proximity force approximation,
  /// rho(k, z) = g(k, z) / g(0, z); equals 1 exactly at k = 0.
  double rho(double k, double z) const;

  std::string describe() const;

private:
  ResponseKernel() = default;

  KernelKind kind_ = KernelKind::perfect_cp;
  AtomResponse atom_ = AtomResponse::static_polarizability(0.0);
  std::optional<MaterialResponse> material_;
  std::shared_ptr<NonspecularProvider> provider_;
  QuadratureSpec spec_ = default_quadrature_1d();
  double integrated_alpha_ = 0.0; // cached for the vdW kind
  mutable std::shared_ptr<std::mutex> provider_guard_; // serializes unsafe providers
};

// ---------------------------------------------------------------------------
// Regime diagnostics.
// ---------------------------------------------------------------------------

struct RegimeAdvice {
  double lambda_atom; // c / omega_A; 0 when the atom has no frequency scale
  double separation;
  PotentialRegime recommended;
};

/// Reports c/omega_A against the separation and recommends which closed-form
/// kernel regime applies; callers must pick a regime or supply a provider,
/// the library never interpolates across the crossover silently.
RegimeAdvice recommend_regime(const AtomResponse& atom, double z);

} // namespace lcp
