#include "lcp/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lcp/constants.hpp"
#include "lcp/errors.hpp"

namespace lcp {

namespace {
constexpr double pi = constants::pi;
constexpr int kGibbsHarmonicFloor = 21;
} // namespace

const char* to_string(ProfileKind k) {
  switch (k) {
  case ProfileKind::sinusoid:
    return "sinusoid";
  case ProfileKind::rectangular_grooves:
    return "rectangular-grooves";
  case ProfileKind::tabulated_even:
    return "tabulated-even";
  }
  return "?";
}

CorrugationProfile CorrugationProfile::sinusoid(double period, double amplitude,
                                                int max_harmonic) {
  if (!(period > 0.0))
    throw DomainError("CorrugationProfile: period must be > 0");
  if (!(amplitude > 0.0))
    throw DomainError("CorrugationProfile: amplitude must be > 0");
  if (max_harmonic < 1)
    throw DomainError("CorrugationProfile: max harmonic must be >= 1");
  CorrugationProfile p;
  p.kind_ = ProfileKind::sinusoid;
  p.period_ = period;
  p.coefficients_.assign(static_cast<std::size_t>(max_harmonic) + 1, 0.0);
  p.coefficients_[1] = amplitude;
  p.max_abs_height_ = amplitude;
  return p;
}

CorrugationProfile CorrugationProfile::rectangular_grooves(double period,
                                                           double depth,
                                                           double width,
                                                           int max_harmonic) {
  if (!(period > 0.0))
    throw DomainError("CorrugationProfile: period must be > 0");
  if (!(depth > 0.0))
    throw DomainError("CorrugationProfile: groove depth must be > 0");
  if (!(width > 0.0) || !(width < period))
    throw DomainError("CorrugationProfile: groove width must lie in "
                      "(0, period)");
  if (max_harmonic < 1)
    throw DomainError("CorrugationProfile: max harmonic must be >= 1");

  CorrugationProfile p;
  p.kind_ = ProfileKind::rectangular_grooves;
  p.period_ = period;
  p.depth_ = depth;
  p.width_ = width;
  p.max_abs_height_ = depth;

  // Direct integration of the step profile against cos(n k_c x) with the
  // groove centered at period/2:
  //   a_0 = -depth * width / period
  //   a_n = -(2 depth / (n pi)) sin(n pi width / period) (-1)^n,  n >= 1.
  p.coefficients_.resize(static_cast<std::size_t>(max_harmonic) + 1);
  p.coefficients_[0] = -depth * width / period;
  for (int n = 1; n <= max_harmonic; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    p.coefficients_[static_cast<std::size_t>(n)] =
        -(2.0 * depth / (n * pi)) * std::sin(n * pi * width / period) * sign;
  }
  if (max_harmonic < kGibbsHarmonicFloor)
    p.warnings_.push_back("harmonic cutoff too small to resolve the groove "
                          "edges; expect visible Gibbs ripple");
  return p;
}

CorrugationProfile
CorrugationProfile::tabulated(std::vector<std::array<double, 2>> samples,
                              int max_harmonic) {
  if (samples.size() < 5)
    throw DataError("CorrugationProfile: need at least 5 samples over one "
                    "period");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (!(samples[i + 1][0] > samples[i][0]))
      throw DataError("CorrugationProfile: sample positions must be strictly "
                      "increasing");
  if (max_harmonic < 1)
    throw DomainError("CorrugationProfile: max harmonic must be >= 1");

  const double period = samples.back()[0] - samples.front()[0];
  if (!(period > 0.0))
    throw DataError("CorrugationProfile: zero period");

  double hmax = 0.0;
  for (const auto& s : samples)
    hmax = std::max(hmax, std::abs(s[1]));
  if (std::abs(samples.back()[1] - samples.front()[1]) >
      1e-9 * std::max(hmax, 1e-30))
    throw DataError("CorrugationProfile: first and last sample must agree "
                    "(one full period, wrap point included)");

  CorrugationProfile p;
  p.kind_ = ProfileKind::tabulated_even;
  p.period_ = period;

  const std::size_t m = samples.size() - 1; // wrap sample dropped
  int nmax = max_harmonic;
  const int alias_limit = static_cast<int>((m - 1) / 2);
  if (nmax > alias_limit) {
    nmax = std::max(alias_limit, 1);
    p.warnings_.push_back("harmonic cutoff clamped to " +
                          std::to_string(nmax) +
                          " by the sample count (aliasing limit)");
  }

  const double k_c = 2.0 * pi / period;
  const double x0 = samples.front()[0];

  // Uniform grids admit exact discrete orthogonality; fall back to
  // piecewise-linear (Filon-type) segment integrals otherwise.
  bool uniform = true;
  const double dx0 = samples[1][0] - samples[0][0];
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (std::abs((samples[i + 1][0] - samples[i][0]) - dx0) > 1e-9 * dx0)
      uniform = false;

  p.coefficients_.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  std::vector<double> sine(static_cast<std::size_t>(nmax) + 1, 0.0);

  if (uniform) {
    for (int n = 0; n <= nmax; ++n) {
      double ac = 0.0, as = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double phase = n * k_c * (samples[j][0] - x0);
        ac += samples[j][1] * std::cos(phase);
        as += samples[j][1] * std::sin(phase);
      }
      const double norm = (n == 0 ? 1.0 : 2.0) / static_cast<double>(m);
      p.coefficients_[static_cast<std::size_t>(n)] = norm * ac;
      sine[static_cast<std::size_t>(n)] = norm * as;
    }
  } else {
    for (int n = 0; n <= nmax; ++n) {
      double ac = 0.0, as = 0.0;
      for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
        const double xa = samples[j][0] - x0, xb = samples[j + 1][0] - x0;
        const double ha = samples[j][1], hb = samples[j + 1][1];
        if (n == 0) {
          ac += 0.5 * (ha + hb) * (xb - xa);
          continue;
        }
        // Int (ha + slope (x - xa)) cos(w x) dx over [xa, xb], exactly.
        const double w = n * k_c;
        const double slope = (hb - ha) / (xb - xa);
        ac += (hb * std::sin(w * xb) - ha * std::sin(w * xa)) / w +
              slope * (std::cos(w * xb) - std::cos(w * xa)) / (w * w);
        as += (-hb * std::cos(w * xb) + ha * std::cos(w * xa)) / w +
              slope * (std::sin(w * xb) - std::sin(w * xa)) / (w * w);
      }
      const double norm = (n == 0 ? 1.0 : 2.0) / period;
      p.coefficients_[static_cast<std::size_t>(n)] = norm * ac;
      sine[static_cast<std::size_t>(n)] = norm * as;
    }
  }

  double max_sine = 0.0;
  for (double b : sine)
    max_sine = std::max(max_sine, std::abs(b));
  if (max_sine > 1e-6 * std::max(hmax, 1e-30))
    p.warnings_.push_back("profile has odd (sine) content of relative size " +
                          std::to_string(max_sine / std::max(hmax, 1e-30)) +
                          "; it is ignored by the even-profile analysis");

  p.synthesize_extrema();
  return p;
}

CorrugationProfile CorrugationProfile::from_stream(std::istream& in,
                                                   int max_harmonic) {
  std::vector<std::array<double, 2>> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream row(line);
    double x, h;
    std::string extra;
    if (!(row >> x)) // blank or comment-only line
      continue;
    if (!(row >> h) || (row >> extra))
      throw ParseError("profile: expected two numeric columns", lineno);
    samples.push_back({x, h});
  }
  return tabulated(std::move(samples), max_harmonic);
}

CorrugationProfile CorrugationProfile::from_file(const std::string& path,
                                                 int max_harmonic) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open '" + path + "'");
  return from_stream(in, max_harmonic);
}

void CorrugationProfile::synthesize_extrema() {
  // max |h| of the truncated series, scanned over one period
  const int samples = 4096;
  double hmax = 0.0;
  for (int i = 0; i < samples; ++i)
    hmax = std::max(hmax, std::abs(height(period_ * i / samples)));
  max_abs_height_ = hmax;
}

double CorrugationProfile::wavevector() const { return 2.0 * pi / period_; }

double CorrugationProfile::height(double x) const {
  const double xr = std::remainder(x, period_);
  switch (kind_) {
  case ProfileKind::sinusoid:
    return coefficients_[1] * std::cos(wavevector() * xr);
  case ProfileKind::rectangular_grooves: {
    const double edge = 0.5 * (period_ - width_);
    return std::abs(xr) <= edge ? 0.0 : -depth_;
  }
  case ProfileKind::tabulated_even: {
    double h = 0.0;
    const double k_c = wavevector();
    for (std::size_t n = 0; n < coefficients_.size(); ++n)
      h += coefficients_[n] * std::cos(n * k_c * xr);
    return h;
  }
  }
  throw ModelError("height: unknown profile kind");
}

double CorrugationProfile::slope(double x) const {
  const double xr = std::remainder(x, period_);
  const double k_c = wavevector();
  switch (kind_) {
  case ProfileKind::sinusoid:
    return -coefficients_[1] * k_c * std::sin(k_c * xr);
  case ProfileKind::rectangular_grooves: {
    const double edge = 0.5 * (period_ - width_);
    if (std::abs(std::abs(xr) - edge) < 1e-12 * period_)
      throw DomainError("slope: undefined at a groove edge");
    return 0.0;
  }
  case ProfileKind::tabulated_even: {
    double s = 0.0;
    for (std::size_t n = 1; n < coefficients_.size(); ++n)
      s -= coefficients_[n] * n * k_c * std::sin(n * k_c * xr);
    return s;
  }
  }
  throw ModelError("slope: unknown profile kind");
}

double CorrugationProfile::curvature(double x) const {
  const double xr = std::remainder(x, period_);
  const double k_c = wavevector();
  switch (kind_) {
  case ProfileKind::sinusoid:
    return -coefficients_[1] * k_c * k_c * std::cos(k_c * xr);
  case ProfileKind::rectangular_grooves: {
    const double edge = 0.5 * (period_ - width_);
    if (std::abs(std::abs(xr) - edge) < 1e-12 * period_)
      throw DomainError("curvature: undefined at a groove edge");
    return 0.0;
  }
  case ProfileKind::tabulated_even: {
    double s = 0.0;
    for (std::size_t n = 1; n < coefficients_.size(); ++n)
      s -= coefficients_[n] * (n * k_c) * (n * k_c) * std::cos(n * k_c * xr);
    return s;
  }
  }
  throw ModelError("curvature: unknown profile kind");
}

std::string CorrugationProfile::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << " period=" << period_ << " m";
  switch (kind_) {
  case ProfileKind::sinusoid:
    os << " amplitude=" << coefficients_[1] << " m";
    break;
  case ProfileKind::rectangular_grooves:
    os << " depth=" << depth_ << " m width=" << width_ << " m harmonics="
       << max_harmonic();
    break;
  case ProfileKind::tabulated_even:
    os << " harmonics=" << max_harmonic();
    break;
  }
  return os.str();
}

} // namespace lcp
