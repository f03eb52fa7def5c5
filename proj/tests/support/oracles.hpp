#pragma once

// Independent reference computations for the unit and acceptance tests. They
// deliberately avoid the library's FFT path: transforms are direct O(N^2)
// sums, products are coefficient convolutions, and scalar equations are solved
// by plain bisection or composite quadrature.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

#include "chsys/spectral.hpp"

namespace oracle {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::vector<double> sample(std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(static_cast<double>(j) / static_cast<double>(n));
  return v;
}

inline chsys::SpectralField field(std::size_t n, const std::function<double(double)>& f) {
  return chsys::to_spectral(chsys::GridField(n, sample(n, f)));
}

/// coeff(k) = (1/N) sum_j f_j e^{-2 pi i k j / N} for k = 0..N/2.
inline std::vector<Complex> naive_dft(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<Complex> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -kTwoPi * static_cast<double>(k * j % n) / static_cast<double>(n);
      acc += values[j] * Complex(std::cos(phase), std::sin(phase));
    }
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

/// Direct evaluation of the Fourier series of a field at x.
inline double evaluate(const chsys::SpectralField& f, double x) {
  const long half = static_cast<long>(f.n_modes() / 2);
  double acc = 0.0;
  for (long k = -half; k < half; ++k) {
    const double phase = kTwoPi * static_cast<double>(k) * x;
    acc += (f.coeff(k) * Complex(std::cos(phase), std::sin(phase))).real();
  }
  return acc;
}

/// Coefficients of fg for |k| <= max_out via sum_n f(n) g(k-n) over |n| < N/2.
inline std::map<long, Complex> convolve(const chsys::SpectralField& f, const chsys::SpectralField& g, long max_out) {
  const long half = static_cast<long>(f.n_modes() / 2);
  std::map<long, Complex> out;
  for (long k = -max_out; k <= max_out; ++k) {
    Complex acc{};
    for (long n = -half + 1; n < half; ++n) {
      const long m = k - n;
      if (m <= -half || m >= half) continue;
      acc += f.coeff(n) * g.coeff(m);
    }
    out[k] = acc;
  }
  return out;
}

/// Random real coefficients in [-1,1]^2 for 1 <= |k| <= band plus a real mean.
inline chsys::SpectralField random_band(std::size_t n, std::size_t band, unsigned seed) {
  std::vector<Complex> half(n / 2 + 1);
  unsigned state = seed * 2654435761u + 12345u;
  auto next = [&] {
    state = state * 1664525u + 1013904223u;
    return static_cast<double>(state >> 8) / static_cast<double>(1u << 24) * 2.0 - 1.0;
  };
  half[0] = Complex(next(), 0.0);
  for (std::size_t k = 1; k <= band; ++k) half[k] = Complex(next(), next());
  return chsys::SpectralField(n, std::move(half));
}

/// Root of an increasing function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 300) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

inline double max_abs_diff(const chsys::SpectralField& a, const chsys::SpectralField& b) {
  return chsys::linf_norm(a - b);
}

}  // namespace oracle
