#include "chsys/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chsys {
namespace {

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 4.0 / 3.0;

int compute_q_max(std::size_t n_modes) {
  const double half = static_cast<double>(n_modes) / 2.0;
  int q = 0;
  while (std::ldexp(8.0 / 3.0, q) < half) ++q;
  return q;
}

double sharp_weight(int q, int q_max, std::size_t abs_n) {
  if (q == -1) return abs_n == 0 ? 1.0 : 0.0;
  const std::size_t lo = std::size_t{1} << q;
  if (abs_n < lo) return 0.0;
  if (q == q_max) return 1.0;
  return abs_n < (lo << 1) ? 1.0 : 0.0;
}

double smooth_weight(int q, int q_max, std::size_t abs_n) {
  const double xi = static_cast<double>(abs_n);
  if (q == -1) return chi_profile(xi);
  const double lower = chi_profile(std::ldexp(xi, -q));
  if (q == q_max) return 1.0 - lower;
  return chi_profile(std::ldexp(xi, -(q + 1))) - lower;
}

}  // namespace

const char* to_string(FilterKind kind) { return kind == FilterKind::smooth ? "smooth" : "sharp"; }

FilterKind filter_kind_from_string(const std::string& name) {
  if (name == "smooth") return FilterKind::smooth;
  if (name == "sharp") return FilterKind::sharp;
  throw ConfigError("unknown filter kind '" + name + "' (expected smooth|sharp)");
}

double smooth_step_down(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / t);
  return a / (a + b);
}

double chi_profile(double xi) {
  return smooth_step_down((std::abs(xi) - kInner) / (kOuter - kInner));
}

DyadicFilterBank::DyadicFilterBank(std::size_t n_modes, FilterKind kind)
    : n_modes_(n_modes), kind_(kind), q_max_(0) {
  if (n_modes < 8 || n_modes % 2 != 0) {
    throw ConfigError("filter bank needs an even grid with N >= 8, got " + std::to_string(n_modes));
  }
  q_max_ = compute_q_max(n_modes);
  const std::size_t nyq = n_modes / 2;
  weights_.assign(static_cast<std::size_t>(q_max_) + 2, std::vector<double>(nyq + 1, 0.0));
  for (int q = -1; q <= q_max_; ++q) {
    auto& row = weights_[static_cast<std::size_t>(q + 1)];
    for (std::size_t k = 0; k <= nyq; ++k) {
      row[k] = kind == FilterKind::sharp ? sharp_weight(q, q_max_, k) : smooth_weight(q, q_max_, k);
    }
  }
}

double DyadicFilterBank::weight(int q, std::size_t abs_n) const {
  if (q < -1 || q > q_max_) throw std::out_of_range("dyadic block index " + std::to_string(q) + " out of range");
  return weights_[static_cast<std::size_t>(q + 1)].at(abs_n);
}

DyadicFilterBank build_filters(std::size_t n_modes, FilterKind kind) { return DyadicFilterBank(n_modes, kind); }

SpectralField block(int q, const SpectralField& f, const DyadicFilterBank& bank) {
  if (f.n_modes() != bank.n_modes()) throw ShapeError("block: field and filter bank grids differ");
  if (q < -1 || q > bank.q_max()) {
    throw std::out_of_range("block: q=" + std::to_string(q) + " outside [-1, " + std::to_string(bank.q_max()) + "]");
  }
  SpectralField out = f;
  auto h = out.half();
  for (std::size_t k = 0; k < h.size(); ++k) h[k] *= bank.weight(q, k);
  return out;
}

SpectralField low_pass(int q, const SpectralField& f, const DyadicFilterBank& bank) {
  if (q < 0) throw std::out_of_range("low_pass: q must be >= 0");
  if (q > bank.q_max()) return f;
  SpectralField out(f.n_modes());
  for (int p = -1; p <= q - 1; ++p) out += block(p, f, bank);
  return out;
}

Integrability integrability_from_string(const std::string& text) {
  if (text == "2") return Integrability::two;
  if (text == "inf" || text == "infinity") return Integrability::infinity;
  throw ConfigError("unsupported Besov integrability p=" + text + " (expected 2|inf)");
}

Summability summability_from_string(const std::string& text) {
  if (text == "1") return Summability::one;
  if (text == "2") return Summability::two;
  if (text == "inf" || text == "infinity") return Summability::infinity;
  throw ConfigError("unsupported Besov summability r=" + text + " (expected 1|2|inf)");
}

std::vector<double> weighted_block_norms(const SpectralField& f, const BesovParams& params,
                                         const DyadicFilterBank& bank) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(bank.q_max()) + 2);
  for (int q = -1; q <= bank.q_max(); ++q) {
    SpectralField piece = block(q, f, bank);
    if (params.homogeneous && q == -1) piece.half()[0] = Complex{};
    const double norm = params.p == Integrability::two ? l2_norm(piece) : linf_norm(piece);
    out.push_back(std::exp2(q * params.s) * norm);
  }
  return out;
}

double lr_norm(const std::vector<double>& seq, Summability r) {
  switch (r) {
    case Summability::one: {
      double sum = 0.0;
      for (double v : seq) sum += v;
      return sum;
    }
    case Summability::two: {
      double sum = 0.0;
      for (double v : seq) sum += v * v;
      return std::sqrt(sum);
    }
    case Summability::infinity:
      return seq.empty() ? 0.0 : *std::max_element(seq.begin(), seq.end());
  }
  return 0.0;
}

double besov_norm(const SpectralField& f, const BesovParams& params, const DyadicFilterBank& bank) {
  return lr_norm(weighted_block_norms(f, params, bank), params.r);
}

double b_2_1(const SpectralField& f, double s, const DyadicFilterBank& bank) {
  return besov_norm(f, {s, Integrability::two, Summability::one, false}, bank);
}

double b_2_inf(const SpectralField& f, double s, const DyadicFilterBank& bank) {
  return besov_norm(f, {s, Integrability::two, Summability::infinity, false}, bank);
}

double hb0_inf(const SpectralField& f, Summability r, const DyadicFilterBank& bank) {
  return besov_norm(f, {0.0, Integrability::infinity, r, true}, bank);
}

}  // namespace chsys
