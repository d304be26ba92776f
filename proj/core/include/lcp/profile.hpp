#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace lcp {

// Periodic, even surface profiles h(x) and their Fourier cosine series
//   h(x) = sum_{n=0}^{N} a_n cos(n k_c x),  k_c = 2 pi / period.

enum class ProfileKind { sinusoid, rectangular_grooves, tabulated_even };

const char* to_string(ProfileKind k);

class CorrugationProfile {
public:
  /// h(x) = amplitude cos(k_c x).
  static CorrugationProfile sinusoid(double period, double amplitude,
                                     int max_harmonic = 1);

  /// Periodic grooves: h = 0 on the plateau (centered at x = 0) and
  /// h = -depth inside the groove of the given width, centered at
  /// x = period/2. Even by construction.
  static CorrugationProfile rectangular_grooves(double period, double depth,
                                                double width,
                                                int max_harmonic = 101);

  /// Even profile given as (x, h) samples spanning exactly one period,
  /// both endpoints included (the wrap sample is dropped after a
  /// periodicity check). File format: two columns in meters, '#' comments.
  static CorrugationProfile tabulated(std::vector<std::array<double, 2>> samples,
                                      int max_harmonic = 101);
  static CorrugationProfile from_stream(std::istream& in, int max_harmonic = 101);
  static CorrugationProfile from_file(const std::string& path,
                                      int max_harmonic = 101);

  ProfileKind kind() const { return kind_; }
  double period() const { return period_; }
  double wavevector() const; // k_c = 2 pi / period
  int max_harmonic() const { return static_cast<int>(coefficients_.size()) - 1; }

  /// Cosine coefficients a_0 .. a_N, in meters.
  const std::vector<double>& fourier_coefficients() const {
    return coefficients_;
  }

  /// Exact profile height (discontinuous for grooves; series resynthesis
  /// for tabulated profiles).
  double height(double x) const;
  /// dh/dx; throws DomainError at a groove edge, where it is undefined.
  double slope(double x) const;
  /// d2h/dx2; same edge behavior.
  double curvature(double x) const;

  double max_abs_height() const { return max_abs_height_; }

  const std::vector<std::string>& warnings() const { return warnings_; }

  std::string describe() const;

private:
  CorrugationProfile() = default;
  void synthesize_extrema();

  ProfileKind kind_ = ProfileKind::sinusoid;
  double period_ = 0.0;
  double depth_ = 0.0; // grooves
  double width_ = 0.0; // grooves
  double max_abs_height_ = 0.0;
  std::vector<double> coefficients_;
  std::vector<std::string> warnings_;
};

} // namespace lcp
