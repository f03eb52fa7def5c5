#include "chsys/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace chsys {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fftw_plan_* is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    real_ = fftw_alloc_real(n);
    spec_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(ni, real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(ni, spec_, real_, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<const double> in, std::span<Complex> out) {
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(forward_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = Complex(spec_[k][0] * scale, spec_[k][1] * scale);
    }
  }

  // c2r overwrites its input, so the spectrum is staged in the plan's buffer.
  void backward(std::span<const Complex> in, std::span<double> out) {
    for (std::size_t k = 0; k < in.size(); ++k) {
      spec_[k][0] = in[k].real();
      spec_[k][1] = in[k].imag();
    }
    fftw_execute(backward_);
    std::copy(real_, real_ + n_, out.begin());
  }

 private:
  std::size_t n_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

FftPlan& plan_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

template <class Mult>
SpectralField apply_multiplier(const SpectralField& f, Mult&& mult) {
  SpectralField out = f;
  auto h = out.half();
  for (std::size_t k = 0; k < h.size(); ++k) h[k] *= mult(static_cast<long>(k));
  return out;
}

}  // namespace

GridField::GridField(std::size_t n_modes) : values_(n_modes, 0.0) {}

GridField::GridField(std::size_t n_modes, std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() != n_modes) throw ShapeError("GridField: value count does not match n_modes");
}

bool GridField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double GridField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SpectralField::SpectralField(std::size_t n_modes) : n_modes_(n_modes), half_(n_modes / 2 + 1) {
  require_even_grid(n_modes);
}

SpectralField::SpectralField(std::size_t n_modes, std::vector<Complex> half)
    : n_modes_(n_modes), half_(std::move(half)) {
  require_even_grid(n_modes);
  if (half_.size() != n_modes / 2 + 1) throw ShapeError("SpectralField: half spectrum must hold N/2+1 entries");
  half_.front().imag(0.0);
  half_.back().imag(0.0);
}

SpectralField SpectralField::constant(std::size_t n_modes, double value) {
  SpectralField f(n_modes);
  f.half_[0] = value;
  return f;
}

Complex SpectralField::coeff(long n) const {
  const long nyq = static_cast<long>(n_modes_ / 2);
  if (n < -nyq || n > nyq) throw std::out_of_range("SpectralField::coeff: wavenumber outside [-N/2, N/2]");
  if (n >= 0) return half_[static_cast<std::size_t>(n)];
  return std::conj(half_[static_cast<std::size_t>(-n)]);
}

void SpectralField::set_coeff(long n, Complex value) {
  const long nyq = static_cast<long>(n_modes_ / 2);
  if (n < -nyq || n > nyq) throw std::out_of_range("SpectralField::set_coeff: wavenumber outside [-N/2, N/2]");
  const std::size_t k = static_cast<std::size_t>(std::abs(n));
  half_[k] = n >= 0 ? value : std::conj(value);
  if (k == 0 || k == static_cast<std::size_t>(nyq)) half_[k].imag(0.0);
}

bool SpectralField::all_finite() const {
  return std::all_of(half_.begin(), half_.end(),
                     [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

bool SpectralField::is_zero() const {
  return std::all_of(half_.begin(), half_.end(), [](Complex c) { return c == Complex{}; });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other, "SpectralField::operator+=");
  for (std::size_t k = 0; k < half_.size(); ++k) half_[k] += other.half_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other, "SpectralField::operator-=");
  for (std::size_t k = 0; k < half_.size(); ++k) half_[k] -= other.half_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : half_) c *= scale;
  return *this;
}

void require_even_grid(std::size_t n_modes) {
  if (n_modes == 0 || n_modes % 2 != 0) {
    throw ShapeError("grid size must be a positive even integer, got " + std::to_string(n_modes));
  }
}

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what) {
  if (a.n_modes() != b.n_modes()) {
    throw ShapeError(std::string(what) + ": mismatched grids (" + std::to_string(a.n_modes()) + " vs " +
                     std::to_string(b.n_modes()) + ")");
  }
}

SpectralField to_spectral(const GridField& f) {
  require_even_grid(f.n_modes());
  if (!f.all_finite()) throw InvalidField("to_spectral: non-finite grid value");
  std::vector<Complex> half(f.n_modes() / 2 + 1);
  plan_for(f.n_modes()).forward(f.values(), half);
  return SpectralField(f.n_modes(), std::move(half));
}

GridField to_grid(const SpectralField& f) {
  GridField out(f.n_modes());
  plan_for(f.n_modes()).backward(f.half(), out.values());
  return out;
}

SpectralField derivative(const SpectralField& f) {
  const long nyq = static_cast<long>(f.n_modes() / 2);
  return apply_multiplier(f, [nyq](long n) {
    return n == nyq ? Complex{} : Complex(0.0, kTwoPi * static_cast<double>(n));
  });
}

SpectralField antiderivative_zero_mean(const SpectralField& f) {
  const long nyq = static_cast<long>(f.n_modes() / 2);
  return apply_multiplier(f, [nyq](long n) {
    if (n == 0 || n == nyq) return Complex{};
    return Complex(0.0, -1.0 / (kTwoPi * static_cast<double>(n)));
  });
}

SpectralField helmholtz_inverse(const SpectralField& f) {
  return apply_multiplier(f, [](long n) {
    const double k = kTwoPi * static_cast<double>(n);
    return Complex(1.0 / (1.0 + k * k), 0.0);
  });
}

SpectralField helmholtz(const SpectralField& f) {
  return apply_multiplier(f, [](long n) {
    const double k = kTwoPi * static_cast<double>(n);
    return Complex(1.0 + k * k, 0.0);
  });
}

double mean(const SpectralField& f) { return f.half()[0].real(); }

std::size_t retained_band(std::size_t n_modes, bool dealias) {
  return dealias ? (n_modes - 1) / 3 : n_modes / 2;
}

SpectralField truncate(const SpectralField& f, std::size_t max_mode) {
  SpectralField out = f;
  auto h = out.half();
  for (std::size_t k = max_mode + 1; k < h.size(); ++k) h[k] = Complex{};
  return out;
}

std::size_t bandwidth(const SpectralField& f) {
  auto h = f.half();
  for (std::size_t k = h.size(); k-- > 0;) {
    if (h[k] != Complex{}) return k;
  }
  return 0;
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g, bool dealias) {
  require_same_grid(f, g, "dealiased_product");
  const std::size_t n = f.n_modes();
  const std::size_t band = retained_band(n, dealias);
  GridField a = to_grid(dealias ? truncate(f, band) : f);
  const GridField b = to_grid(dealias ? truncate(g, band) : g);
  for (std::size_t j = 0; j < n; ++j) a[j] *= b[j];
  SpectralField out = to_spectral(a);
  return dealias ? truncate(out, band) : out;
}

SpectralField exact_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "exact_product");
  if (bandwidth(f) + bandwidth(g) >= f.n_modes() / 2) {
    throw ShapeError("exact_product: combined bandwidth does not fit below N/2");
  }
  return dealiased_product(f, g, false);
}

SpectralField translate(const SpectralField& f, double shift) {
  return apply_multiplier(f, [shift](long n) {
    const double phase = -kTwoPi * static_cast<double>(n) * shift;
    return Complex(std::cos(phase), std::sin(phase));
  });
}

SpectralField resample(const SpectralField& f, std::size_t n_out) {
  if (n_out == f.n_modes()) return f;
  require_even_grid(n_out);
  const std::size_t nyq_in = f.n_modes() / 2;
  const std::size_t nyq_out = n_out / 2;
  std::vector<Complex> half(nyq_out + 1);
  auto src = f.half();
  if (n_out > f.n_modes()) {
    std::copy(src.begin(), src.end(), half.begin());
    // The coarse Nyquist entry stands for both +-N/2; on a finer grid they are distinct modes.
    half[nyq_in] *= 0.5;
  } else {
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(nyq_out), half.begin());
  }
  return SpectralField(n_out, std::move(half));
}

GridField to_grid_padded(const SpectralField& f, std::size_t n_out) {
  if (n_out < f.n_modes()) throw ShapeError("to_grid_padded: target grid smaller than source");
  return to_grid(resample(f, n_out));
}

double linf_norm(const SpectralField& f) { return to_grid(f).max_abs(); }

double l2_norm(const SpectralField& f) {
  auto h = f.half();
  const std::size_t nyq = h.size() - 1;
  double sum = std::norm(h[0]) + std::norm(h[nyq]);
  for (std::size_t k = 1; k < nyq; ++k) sum += 2.0 * std::norm(h[k]);
  return std::sqrt(sum);
}

}  // namespace chsys
