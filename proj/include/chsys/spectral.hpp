#pragma once

// Fourier representation of real periodic fields on T = R/Z.
//
// Coefficients follow coeff(n) = \int_T f(x) e^{-2 pi i n x} dx, approximated by
// the 1/N-weighted discrete sum over the collocation points x_j = j/N. Only the
// non-negative half of the spectrum (n = 0..N/2) is stored; negative modes are
// recovered by Hermitian symmetry, and the Nyquist entry doubles as n = -N/2.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "chsys/errors.hpp"

namespace chsys {

using Complex = std::complex<double>;

/// Real samples at x_j = j/N.
class GridField {
 public:
  GridField() = default;
  explicit GridField(std::size_t n_modes);
  GridField(std::size_t n_modes, std::vector<double> values);

  std::size_t n_modes() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }

  double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(values_.size()); }
  bool all_finite() const;
  double max_abs() const;

 private:
  std::vector<double> values_;
};

class SpectralField {
 public:
  SpectralField() = default;
  /// Zero field on an N-point grid.
  explicit SpectralField(std::size_t n_modes);
  /// Takes the half spectrum n = 0..N/2. The imaginary parts of the mean and
  /// Nyquist entries are dropped since they do not describe a real field.
  SpectralField(std::size_t n_modes, std::vector<Complex> half);

  static SpectralField constant(std::size_t n_modes, double value);

  std::size_t n_modes() const { return n_modes_; }
  std::size_t half_size() const { return half_.size(); }
  std::span<const Complex> half() const { return half_; }
  std::span<Complex> half() { return half_; }

  /// Coefficient for any wavenumber n in [-N/2, N/2].
  Complex coeff(long n) const;
  /// Sets coeff(n) and, implicitly, coeff(-n).
  void set_coeff(long n, Complex value);

  bool all_finite() const;
  bool is_zero() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator-(SpectralField a) { return a *= -1.0; }
  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  std::size_t n_modes_ = 0;
  std::vector<Complex> half_;
};

/// Throws ShapeError unless n_modes is a positive even integer.
void require_even_grid(std::size_t n_modes);
void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what);

SpectralField to_spectral(const GridField& f);
GridField to_grid(const SpectralField& f);

/// Multiplies coeff(n) by i 2 pi n; the Nyquist mode is zeroed.
SpectralField derivative(const SpectralField& f);

/// Zero-mean antiderivative: coeff(n)/(i 2 pi n) for n != 0, mean and Nyquist zeroed.
SpectralField antiderivative_zero_mean(const SpectralField& f);

/// (1 - d_x^2)^{-1}: coeff(n)/(1 + (2 pi n)^2).
SpectralField helmholtz_inverse(const SpectralField& f);
/// (1 - d_x^2): coeff(n)(1 + (2 pi n)^2).
SpectralField helmholtz(const SpectralField& f);

double mean(const SpectralField& f);

/// Retained band |n| <= K of the two-thirds rule, K = floor((N-1)/3). Without
/// dealiasing the full band N/2 is retained.
std::size_t retained_band(std::size_t n_modes, bool dealias = true);

/// Zeroes every mode with |n| > max_mode.
SpectralField truncate(const SpectralField& f, std::size_t max_mode);

/// Largest |n| carrying a nonzero coefficient (0 for constants and the zero field).
std::size_t bandwidth(const SpectralField& f);

/// Pseudospectral product. With dealias set, both inputs and the output are
/// truncated to retained_band(N); the result is alias-free inside that band.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g, bool dealias = true);

/// Grid product that throws unless bandwidth(f) + bandwidth(g) < N/2, i.e. the
/// product is represented without aliasing or truncation.
SpectralField exact_product(const SpectralField& f, const SpectralField& g);

/// Multiplies coefficients by e^{-2 pi i n shift}: returns x -> f(x - shift).
SpectralField translate(const SpectralField& f, double shift);

/// Evaluates on a grid of n_out points (n_out >= N) by zero padding.
GridField to_grid_padded(const SpectralField& f, std::size_t n_out);

/// Re-expresses f on another grid, truncating or zero padding the spectrum.
SpectralField resample(const SpectralField& f, std::size_t n_out);

double linf_norm(const SpectralField& f);
/// L^2(T) norm by Parseval.
double l2_norm(const SpectralField& f);

}  // namespace chsys
