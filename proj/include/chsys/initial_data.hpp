#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "chsys/spectral.hpp"

namespace chsys {

/// sum_k amplitude_k cos(2 pi n_k x + phase_k)
struct FourierModes {
  struct Mode {
    long wavenumber = 0;
    double amplitude = 0.0;
    double phase = 0.0;
  };
  std::vector<Mode> modes;
};

/// offset + amplitude cos(2 pi k x)
struct Cosine {
  long wavenumber = 1;
  double amplitude = 1.0;
  double offset = 0.0;
};

/// amplitude sum_j exp(-(x - center - j)^2 / (2 width^2)), periodized.
struct GaussianBump {
  double center = 0.5;
  double width = 0.1;
  double amplitude = 1.0;
};

/// Coefficients for 0 <= n <= max_mode drawn uniformly from the box
/// amplitude * ([-1,1] + i[-1,1]) with a 64-bit Mersenne twister.
struct RandomBandLimited {
  std::size_t max_mode = 4;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
};

using InitialSpec = std::variant<FourierModes, Cosine, GaussianBump, RandomBandLimited>;

/// Throws ConfigError for non-finite amplitudes or modes beyond N/2.
SpectralField make_field(const InitialSpec& spec, std::size_t n_modes);

}  // namespace chsys
