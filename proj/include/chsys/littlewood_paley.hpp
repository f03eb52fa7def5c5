#pragma once

// Dyadic (Littlewood-Paley) frequency decomposition on the torus and the
// Besov norms built from it.
//
// Block q = -1 is the low-pass chi; blocks q = 0..q_max are the annular phi_q.
// q_max is the smallest q with 2^q * 8/3 >= N/2, and the top block collects
// every represented frequency not claimed by the lower ones, so the weights
// sum to one on the whole grid.

#include <cstddef>
#include <string>
#include <vector>

#include "chsys/spectral.hpp"

namespace chsys {

enum class FilterKind { smooth, sharp };

const char* to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& name);

/// C-infinity transition: 1 for t <= 0, 0 for t >= 1, built from exp(-1/t).
double smooth_step_down(double t);

/// Radial low-pass profile: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3.
double chi_profile(double xi);

class DyadicFilterBank {
 public:
  DyadicFilterBank(std::size_t n_modes, FilterKind kind);

  std::size_t n_modes() const { return n_modes_; }
  FilterKind kind() const { return kind_; }
  int q_max() const { return q_max_; }

  /// Weight of block q (q = -1 is chi) at wavenumber |n| <= N/2.
  double weight(int q, std::size_t abs_n) const;
  double chi(std::size_t abs_n) const { return weight(-1, abs_n); }
  double phi(int q, std::size_t abs_n) const { return weight(q, abs_n); }

 private:
  std::size_t n_modes_;
  FilterKind kind_;
  int q_max_;
  std::vector<std::vector<double>> weights_;  // [q + 1][|n|]
};

DyadicFilterBank build_filters(std::size_t n_modes, FilterKind kind);

/// Delta_q f. Throws std::out_of_range for q outside [-1, q_max].
SpectralField block(int q, const SpectralField& f, const DyadicFilterBank& bank);

/// S_q f = sum_{p <= q-1} Delta_p f, q >= 0. S_q = Id once q > q_max.
SpectralField low_pass(int q, const SpectralField& f, const DyadicFilterBank& bank);

enum class Integrability { two, infinity };
enum class Summability { one, two, infinity };

struct BesovParams {
  double s = 0.0;
  Integrability p = Integrability::two;
  Summability r = Summability::one;
  bool homogeneous = false;
};

Integrability integrability_from_string(const std::string& text);
Summability summability_from_string(const std::string& text);

/// 2^{qs} ||Delta_q f||_{L^p} for every block. For the homogeneous variant the
/// q = -1 entry drops the mean; the remaining negative homogeneous blocks are
/// empty on the torus.
std::vector<double> weighted_block_norms(const SpectralField& f, const BesovParams& params,
                                         const DyadicFilterBank& bank);

double besov_norm(const SpectralField& f, const BesovParams& params, const DyadicFilterBank& bank);

/// l^r norm of a nonnegative sequence.
double lr_norm(const std::vector<double>& seq, Summability r);

// Shorthands for the norms used throughout.
double b_2_1(const SpectralField& f, double s, const DyadicFilterBank& bank);
double b_2_inf(const SpectralField& f, double s, const DyadicFilterBank& bank);
double hb0_inf(const SpectralField& f, Summability r, const DyadicFilterBank& bank);

}  // namespace chsys
