#include <cmath>
#include <limits>
#include <numbers>

#include "chsys/spectral.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace chsys;
using oracle::field;
using std::numbers::pi;

TEST_SUITE("spectral") {
  TEST_CASE("constant field has only a mean coefficient") {
    const SpectralField f = field(16, [](double) { return 1.0; });
    CHECK(f.coeff(0).real() == doctest::Approx(1.0).epsilon(1e-15));
    for (long k = 1; k <= 8; ++k) CHECK(std::abs(f.coeff(k)) < 1e-15);
  }

  TEST_CASE("single cosine mode splits evenly between +1 and -1") {
    const SpectralField f = field(16, [](double x) { return std::cos(2 * pi * x); });
    CHECK(std::abs(f.coeff(1) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(f.coeff(-1) - Complex(0.5, 0.0)) < 1e-15);
    for (long k = 2; k <= 8; ++k) CHECK(std::abs(f.coeff(k)) < 1e-15);
    CHECK(std::abs(f.coeff(0)) < 1e-15);
  }

  TEST_CASE("forward transform agrees with a direct DFT") {
    const auto values = oracle::sample(64, [](double x) { return std::exp(std::sin(2 * pi * x)) + 0.3 * std::cos(10 * pi * x); });
    const SpectralField f = to_spectral(GridField(64, values));
    const auto ref = oracle::naive_dft(values);
    double err = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) err = std::max(err, std::abs(f.half()[k] - ref[k]));
    CHECK(err < 1e-14);
  }

  TEST_CASE("round trip to_grid(to_spectral(f)) reproduces smooth samples") {
    for (std::size_t n : {32u, 128u, 512u}) {
      const auto values = oracle::sample(n, [](double x) { return std::exp(std::cos(2 * pi * x)) * std::sin(4 * pi * x); });
      const GridField back = to_grid(to_spectral(GridField(n, values)));
      double err = 0.0;
      for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(back[j] - values[j]));
      CHECK(err < 1e-12);
    }
  }

  TEST_CASE("non-finite samples are rejected") {
    std::vector<double> v(16, 0.0);
    v[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(to_spectral(GridField(16, v)), InvalidField);
    v[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(to_spectral(GridField(16, v)), InvalidField);
  }

  TEST_CASE("odd or empty grids are rejected") {
    CHECK_THROWS_AS(SpectralField(15), ShapeError);
    CHECK_THROWS_AS(SpectralField(0), ShapeError);
  }

  TEST_CASE("Hermitian symmetry of stored fields") {
    const SpectralField f = oracle::random_band(32, 10, 3);
    for (long k = 1; k < 16; ++k) CHECK(f.coeff(-k) == std::conj(f.coeff(k)));
    // The imaginary part of the mean is meaningless for a real field and is dropped.
    std::vector<Complex> h(17);
    h[0] = Complex(1.0, 5.0);
    CHECK(SpectralField(32, h).coeff(0).imag() == 0.0);
  }

  TEST_CASE("derivative examples") {
    const std::size_t n = 64;
    CHECK(oracle::max_abs_diff(derivative(field(n, [](double x) { return std::sin(2 * pi * x); })),
                               field(n, [](double x) { return 2 * pi * std::cos(2 * pi * x); })) < 1e-12);
    CHECK(derivative(SpectralField::constant(n, 4.0)).is_zero());
    CHECK(oracle::max_abs_diff(derivative(field(n, [](double x) { return std::cos(6 * pi * x); })),
                               field(n, [](double x) { return -6 * pi * std::sin(6 * pi * x); })) < 1e-11);
  }

  TEST_CASE("derivative zeroes the Nyquist mode") {
    SpectralField f(16);
    f.set_coeff(8, Complex(1.0, 0.0));
    CHECK(derivative(f).is_zero());
  }

  TEST_CASE("antiderivative examples") {
    const std::size_t n = 64;
    CHECK(oracle::max_abs_diff(antiderivative_zero_mean(field(n, [](double x) { return std::sin(2 * pi * x); })),
                               field(n, [](double x) { return -std::cos(2 * pi * x) / (2 * pi); })) < 1e-15);
    CHECK(antiderivative_zero_mean(SpectralField::constant(n, 7.0)).is_zero());
    CHECK(oracle::max_abs_diff(antiderivative_zero_mean(field(n, [](double x) { return std::cos(4 * pi * x) + 5.0; })),
                               field(n, [](double x) { return std::sin(4 * pi * x) / (4 * pi); })) < 1e-15);
  }

  TEST_CASE("derivative inverts the zero-mean antiderivative") {
    for (unsigned seed = 0; seed < 10; ++seed) {
      const SpectralField f = oracle::random_band(128, 63, seed);
      const SpectralField g = antiderivative_zero_mean(f);
      CHECK(std::abs(mean(g)) == 0.0);
      CHECK(oracle::max_abs_diff(derivative(g), f - SpectralField::constant(128, mean(f))) < 1e-12);
    }
  }

  TEST_CASE("Helmholtz inverse") {
    const std::size_t n = 64;
    CHECK(oracle::max_abs_diff(helmholtz_inverse(field(n, [](double x) { return std::cos(2 * pi * x); })),
                               field(n, [](double x) { return std::cos(2 * pi * x) / (1 + 4 * pi * pi); })) < 1e-15);
    CHECK(oracle::max_abs_diff(helmholtz_inverse(SpectralField::constant(n, 3.0)), SpectralField::constant(n, 3.0)) == 0.0);
    for (unsigned seed = 0; seed < 10; ++seed) {
      const SpectralField f = oracle::random_band(128, 64, seed);
      // (1 - d_x^2) applied through two derivatives, independent of helmholtz()
      const SpectralField u = helmholtz_inverse(f);
      SpectralField back = u;
      auto h = back.half();
      for (std::size_t k = 0; k < h.size(); ++k) h[k] *= 1.0 + std::pow(2 * pi * static_cast<double>(k), 2);
      CHECK(oracle::max_abs_diff(back, f) < 1e-12);
      CHECK(oracle::max_abs_diff(helmholtz(u), f) < 1e-12);
    }
  }

  TEST_CASE("mean") {
    CHECK(mean(SpectralField::constant(32, 3.0)) == 3.0);
    CHECK(std::abs(mean(field(32, [](double x) { return std::sin(2 * pi * x); }))) < 1e-16);
    CHECK(mean(field(32, [](double x) { return 2 + std::cos(4 * pi * x); })) == doctest::Approx(2.0).epsilon(1e-15));
  }

  TEST_CASE("retained band of the two-thirds rule") {
    CHECK(retained_band(256) == 85);
    CHECK(retained_band(64) == 21);
    CHECK(retained_band(64, false) == 32);
  }

  TEST_CASE("dealiased product examples") {
    const std::size_t n = 16;
    const SpectralField c = field(n, [](double x) { return std::cos(2 * pi * x); });
    CHECK(oracle::max_abs_diff(dealiased_product(c, c), field(n, [](double x) { return 0.5 * (1 + std::cos(4 * pi * x)); })) <
          1e-15);
    const SpectralField g = oracle::random_band(n, 5, 1);
    CHECK(oracle::max_abs_diff(dealiased_product(SpectralField::constant(n, 1.0), g), g) < 1e-15);
    CHECK_THROWS_AS(dealiased_product(SpectralField(16), SpectralField(32)), ShapeError);
  }

  TEST_CASE("dealiased product matches the coefficient convolution inside the band") {
    const std::size_t n = 96;
    const long band = static_cast<long>(retained_band(n));
    for (unsigned seed = 0; seed < 5; ++seed) {
      const SpectralField f = oracle::random_band(n, band, 10 + seed);
      const SpectralField g = oracle::random_band(n, band, 20 + seed);
      const SpectralField p = dealiased_product(f, g);
      const auto ref = oracle::convolve(f, g, band);
      double err = 0.0;
      for (long k = -band; k <= band; ++k) err = std::max(err, std::abs(p.coeff(k) - ref.at(k)));
      CHECK(err < 1e-12);
      for (long k = band + 1; k <= static_cast<long>(n / 2); ++k) CHECK(p.coeff(k) == Complex{});
    }
  }

  TEST_CASE("dealiased product is symmetric and bilinear") {
    const SpectralField f = oracle::random_band(64, 21, 1);
    const SpectralField g = oracle::random_band(64, 21, 2);
    const SpectralField h = oracle::random_band(64, 21, 3);
    CHECK(oracle::max_abs_diff(dealiased_product(f, g), dealiased_product(g, f)) < 1e-14);
    CHECK(oracle::max_abs_diff(dealiased_product(2.0 * f + h, g), 2.0 * dealiased_product(f, g) + dealiased_product(h, g)) <
          1e-13);
  }

  TEST_CASE("exact product refuses aliased inputs") {
    const SpectralField f = oracle::random_band(32, 8, 1);
    CHECK_NOTHROW(exact_product(f, oracle::random_band(32, 7, 2)));
    CHECK_THROWS_AS(exact_product(f, oracle::random_band(32, 8, 2)), ShapeError);
  }

  TEST_CASE("translation shifts the profile") {
    const SpectralField c = field(32, [](double x) { return std::cos(2 * pi * x); });
    CHECK(oracle::max_abs_diff(translate(c, 0.25), field(32, [](double x) { return std::sin(2 * pi * x); })) < 1e-15);
    const SpectralField f = oracle::random_band(32, 10, 4);
    CHECK(oracle::max_abs_diff(translate(translate(f, 0.3), -0.3), f) < 1e-14);
    CHECK(oracle::evaluate(translate(f, 0.1), 0.4) == doctest::Approx(oracle::evaluate(f, 0.3)).epsilon(1e-12));
  }

  TEST_CASE("resampling keeps band-limited content") {
    const SpectralField f = oracle::random_band(64, 20, 5);
    const SpectralField fine = resample(f, 256);
    for (long k = -20; k <= 20; ++k) CHECK(std::abs(fine.coeff(k) - f.coeff(k)) < 1e-16);
    CHECK(oracle::max_abs_diff(resample(fine, 64), f) < 1e-14);
    const GridField padded = to_grid_padded(f, 256);
    for (std::size_t j = 0; j < 256; j += 17) CHECK(padded[j] == doctest::Approx(oracle::evaluate(f, padded.x(j))).epsilon(1e-12));
  }

  TEST_CASE("norms: Parseval and sup") {
    const auto values = oracle::sample(64, [](double x) { return 1.0 + std::sin(2 * pi * x) + 0.5 * std::cos(6 * pi * x); });
    const SpectralField f = to_spectral(GridField(64, values));
    double sq = 0.0, sup = 0.0;
    for (double v : values) sq += v * v / 64.0, sup = std::max(sup, std::abs(v));
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(sq)).epsilon(1e-14));
    CHECK(linf_norm(f) == doctest::Approx(sup).epsilon(1e-14));
  }

  TEST_CASE("bandwidth and truncation") {
    SpectralField f = oracle::random_band(64, 12, 6);
    CHECK(bandwidth(f) == 12);
    CHECK(bandwidth(truncate(f, 5)) == 5);
    CHECK(bandwidth(SpectralField::constant(64, 2.0)) == 0);
  }
}
