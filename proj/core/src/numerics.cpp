#include "lcp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "lcp/errors.hpp"

namespace lcp {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw DomainError("QuadratureSpec: rel_tol must lie in (0, 1)");
  if (!(abs_tol >= 0.0))
    throw DomainError("QuadratureSpec: abs_tol must be >= 0");
  if (max_subdivisions < 1)
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

double bessel_k(int order, double x) {
  if (order < 0)
    throw DomainError("bessel_k: order must be >= 0");
  if (!(x > 0.0))
    throw DomainError("bessel_k: argument must be > 0");
  return std::cyl_bessel_k(static_cast<double>(order), x);
}

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (positive half).
constexpr double kKronrodNodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kKronrodWeights[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kGaussWeights[4] = {0.1294849661688697, 0.2797053914892767,
                                     0.3818300505051189, 0.4179591836734694};

struct RuleResult {
  double value;
  double error;
};

// One Gauss-Kronrod 7/15 panel on [a, b] with the QUADPACK error heuristic.
RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double resk = kKronrodWeights[7] * fc;
  double resg = kGaussWeights[3] * fc;
  double resabs = std::abs(resk);

  double fv[7][2];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv[j][0] = f(center - dx);
    fv[j][1] = f(center + dx);
    const double sum = fv[j][0] + fv[j][1];
    resk += kKronrodWeights[j] * sum;
    if (j % 2 == 1)
      resg += kGaussWeights[j / 2] * sum;
    resabs += kKronrodWeights[j] * (std::abs(fv[j][0]) + std::abs(fv[j][1]));
  }

  const double reskh = 0.5 * resk;
  double resasc = kKronrodWeights[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kKronrodWeights[j] * (std::abs(fv[j][0] - reskh) +
                                    std::abs(fv[j][1] - reskh));

  double err = std::abs((resk - resg) * half);
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);

  return {resk * half, err};
}

struct Segment {
  double a, b, value, error;
};

struct WorseError {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    if (lhs.error != rhs.error)
      return lhs.error < rhs.error;
    return lhs.a < rhs.a; // deterministic tie-break
  }
};

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec, int initial_segments) {
  spec.validate();
  if (!(b > a))
    throw DomainError("integrate: upper limit must exceed lower limit");

  std::priority_queue<Segment, std::vector<Segment>, WorseError> queue;
  double total = 0.0, total_err = 0.0;
  for (int i = 0; i < initial_segments; ++i) {
    const double sa = a + (b - a) * i / initial_segments;
    const double sb = a + (b - a) * (i + 1) / initial_segments;
    const RuleResult r = gk15(f, sa, sb);
    queue.push({sa, sb, r.value, r.error});
    total += r.value;
    total_err += r.error;
  }

  const auto converged = [&] {
    return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  };

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<Segment> frozen; // intervals too narrow to split further
  int splits = 0;
  while (!converged() && splits < spec.max_subdivisions && !queue.empty()) {
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width_floor =
        100.0 * eps * std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
    if (worst.b - worst.a < width_floor || mid <= worst.a || mid >= worst.b) {
      frozen.push_back(worst);
      continue;
    }
    const RuleResult left = gk15(f, worst.a, mid);
    const RuleResult right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
    ++splits;
  }

  if (!converged())
    throw ConvergenceError("integrate: tolerance not reached within the "
                           "subdivision budget",
                           total, total_err);
  return total;
}

} // namespace

double integrate_finite(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec) {
  if (a == b)
    return 0.0;
  return adaptive_gk(f, a, b, spec, 2);
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec, double scale) {
  if (!(scale > 0.0))
    throw DomainError("integrate_semi_infinite: scale must be > 0");
  // x = scale t / (1 - t) maps t in (0, 1) onto (0, inf); the Kronrod nodes
  // never touch the endpoints, so f is only ever evaluated at finite x.
  const auto transformed = [&f, scale](double t) {
    const double u = 1.0 - t;
    const double x = scale * t / u;
    return f(x) * scale / (u * u);
  };
  return adaptive_gk(transformed, 0.0, 1.0, spec, 4);
}

double integrate_2d_disk(const std::function<double(double, double)>& f,
                         double radius, const QuadratureSpec& spec) {
  spec.validate();
  if (!(radius > 0.0))
    throw DomainError("integrate_2d_disk: radius must be > 0");

  QuadratureSpec inner = spec;
  inner.rel_tol = std::max(spec.rel_tol * 0.25, 1e-14);
  if (spec.abs_tol > 0.0)
    inner.abs_tol = spec.abs_tol / (4.0 * radius);

  const auto chord = [&](double z) {
    const double w2 = radius * radius - z * z;
    if (w2 <= 0.0)
      return 0.0;
    const double w = std::sqrt(w2);
    return integrate_finite([&f, z](double x) { return f(x, z); }, -w, w,
                            inner);
  };
  return integrate_finite(chord, -radius, radius, spec);
}

namespace {

// Ridders' extrapolation driver shared by both derivative stencils.
template <typename Stencil>
double ridders(const Stencil& stencil, double scale) {
  if (!(scale > 0.0))
    throw DomainError("differentiate: scale must be > 0");
  constexpr int kTableau = 12;
  constexpr double kContract = 1.4;
  constexpr double kContract2 = kContract * kContract;
  constexpr double kDivergenceGuard = 2.0;

  double a[kTableau][kTableau];
  double h = 0.5 * scale;
  a[0][0] = stencil(h);
  double best = a[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTableau; ++i) {
    h /= kContract;
    a[0][i] = stencil(h);
    double fac = kContract2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= kContract2;
      const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]),
                                   std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kDivergenceGuard * err)
      break; // higher orders dominated by roundoff
  }
  return best;
}

} // namespace

double differentiate(const std::function<double(double)>& f, double x,
                     double scale) {
  return ridders(
      [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }, scale);
}

double second_derivative(const std::function<double(double)>& f, double x,
                         double scale) {
  const double f0 = f(x);
  return ridders(
      [&](double h) { return (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h); },
      scale);
}

} // namespace lcp
