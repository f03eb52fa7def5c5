#include "chsys/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "chsys/errors.hpp"

namespace chsys {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConfigError(std::string("initial data: non-finite ") + what);
}

void require_mode(long n, std::size_t n_modes) {
  if (static_cast<std::size_t>(std::abs(n)) > n_modes / 2) {
    throw ConfigError("initial data: wavenumber " + std::to_string(n) + " beyond N/2 = " +
                      std::to_string(n_modes / 2));
  }
}

// Uniform in [-1, 1] from the raw engine output; std distributions are not
// reproducible across standard libraries.
double unit_interval(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

SpectralField build(const FourierModes& spec, std::size_t n_modes) {
  SpectralField f(n_modes);
  for (const auto& mode : spec.modes) {
    require_finite(mode.amplitude, "amplitude");
    require_finite(mode.phase, "phase");
    require_mode(mode.wavenumber, n_modes);
    const long k = std::abs(mode.wavenumber);
    // cos(2 pi k x + phase) = (e^{i phase} e^{2 pi i k x} + c.c.) / 2
    const double phase = mode.wavenumber >= 0 ? mode.phase : -mode.phase;
    const Complex rotation = std::polar(1.0, phase);
    Complex add = k == 0 ? Complex(mode.amplitude * std::cos(mode.phase), 0.0) : 0.5 * mode.amplitude * rotation;
    if (k == static_cast<long>(n_modes / 2) && k != 0) add = Complex(mode.amplitude * std::cos(phase), 0.0);
    f.set_coeff(k, f.coeff(k) + add);
  }
  return f;
}

SpectralField build(const Cosine& spec, std::size_t n_modes) {
  require_finite(spec.amplitude, "amplitude");
  require_finite(spec.offset, "offset");
  require_mode(spec.wavenumber, n_modes);
  FourierModes modes{{{spec.wavenumber, spec.amplitude, 0.0}, {0, spec.offset, 0.0}}};
  return build(modes, n_modes);
}

SpectralField build(const GaussianBump& spec, std::size_t n_modes) {
  require_finite(spec.center, "center");
  require_finite(spec.amplitude, "amplitude");
  if (!(spec.width > 0.0) || !std::isfinite(spec.width)) throw ConfigError("initial data: gaussian width must be > 0");
  GridField grid(n_modes);
  const double two_w2 = 2.0 * spec.width * spec.width;
  const double center = spec.center - std::floor(spec.center);
  for (std::size_t j = 0; j < n_modes; ++j) {
    const double x = grid.x(j);
    double sum = std::exp(-(x - center) * (x - center) / two_w2);
    // Images move monotonically away from x once |x - center| < 1.
    for (int image = 1; image < 100000; ++image) {
      const double shift = static_cast<double>(image);
      const double left = std::exp(-(x - center - shift) * (x - center - shift) / two_w2);
      const double right = std::exp(-(x - center + shift) * (x - center + shift) / two_w2);
      sum += left + right;
      if (left + right <= 1e-15 * sum) break;
    }
    grid[j] = spec.amplitude * sum;
  }
  return to_spectral(grid);
}

SpectralField build(const RandomBandLimited& spec, std::size_t n_modes) {
  require_finite(spec.amplitude, "amplitude");
  require_mode(static_cast<long>(spec.max_mode), n_modes);
  std::mt19937_64 rng(spec.seed);
  SpectralField f(n_modes);
  for (std::size_t k = 0; k <= spec.max_mode; ++k) {
    const double re = unit_interval(rng);
    const double im = unit_interval(rng);
    f.set_coeff(static_cast<long>(k), spec.amplitude * Complex(re, im));
  }
  return f;
}

}  // namespace

SpectralField make_field(const InitialSpec& spec, std::size_t n_modes) {
  require_even_grid(n_modes);
  return std::visit([n_modes](const auto& s) { return build(s, n_modes); }, spec);
}

}  // namespace chsys
