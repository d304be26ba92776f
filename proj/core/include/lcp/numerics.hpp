#pragma once

#include <functional>

namespace lcp {

/// Tolerance contract for the adaptive quadrature routines. Convergence is
/// reached when the accumulated error bound drops below
/// max(abs_tol, rel_tol * |integral|).
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;

  void validate() const; // throws DomainError on nonsense tolerances
};

/// Defaults used by the physics modules: 1e-8 relative for 1D integrals,
/// 1e-6 for the 2D disk average.
inline QuadratureSpec default_quadrature_1d() { return {1e-8, 0.0, 2000}; }
inline QuadratureSpec default_quadrature_2d() { return {1e-6, 0.0, 2000}; }

/// Modified Bessel function of the second kind, K_order(x), for integer
/// order >= 0 and x > 0. Relative error < 1e-10 over x in [1e-6, 50].
double bessel_k(int order, double x);

/// Adaptive Gauss-Kronrod 7/15 integral of f over the finite interval [a, b].
double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec);

/// Integral of f over (0, inf). The integrand must decay at infinity.
/// `scale` sets the characteristic width of the variable transformation
/// x = scale * t / (1 - t); convergence does not depend on it, only the
/// subdivision effort does.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec, double scale = 1.0);

/// Integral of f(x, z) over the disk x^2 + z^2 <= radius^2.
double integrate_2d_disk(const std::function<double(double, double)>& f,
                         double radius, const QuadratureSpec& spec);

/// First derivative of f at x by Ridders' polynomial extrapolation of
/// central differences. `scale` sets the initial step; relative error is
/// typically far below the 1e-6 contract for analytic integrands.
double differentiate(const std::function<double(double)>& f, double x,
                     double scale);

/// Second derivative, same extrapolation scheme applied to the symmetric
/// three-point stencil.
double second_derivative(const std::function<double(double)>& f, double x,
                         double scale);

} // namespace lcp
