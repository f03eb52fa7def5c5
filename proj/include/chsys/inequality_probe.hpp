#pragma once

// Empirical ratio probes for the bilinear, interpolation and commutator
// estimates used in the well-posedness argument. Each probe evaluates
// LHS / RHS with the unspecified universal constant dropped; the largest ratio
// over a corpus is reported as the empirical constant.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chsys/littlewood_paley.hpp"
#include "chsys/spectral.hpp"

namespace chsys {

enum class ProbeKind { moser, endpoint, log_interp, real_interp, commutator };

const char* to_string(ProbeKind kind);
ProbeKind probe_kind_from_string(const std::string& name);

struct ProbeParams {
  // moser: ||fg||_{B^{s1}_{2,r}} <= C ||f||_{B^{s1}_{2,r}} ||g||_{B^{s2}_{2,r}}
  double moser_s1 = -0.5;
  double moser_s2 = 1.5;
  Summability moser_r = Summability::one;
  // log_interp: B^s_{2,1} against B^s_{2,inf} and B^{s+delta}_{2,inf}
  double log_s = -0.5;
  double log_delta = 0.5;
  // real_interp: B^{theta s1 + (1-theta) s2}_{2,1}
  double interp_s1 = -0.5;
  double interp_s2 = 0.5;
  double interp_theta = 0.5;
  // commutator: (2^{q sigma} ||[v d_x, Delta_q] f||_{L^p})_q in l^r
  double commutator_sigma = 0.5;
  Integrability commutator_p = Integrability::two;
  Summability commutator_r = Summability::one;
};

/// Throws ConfigError if the parameters leave the admissible range of the estimate.
void validate_probe_params(ProbeKind kind, const ProbeParams& params);

/// Ratio for a single trial. For the commutator probe the pair is (v, f).
double probe_ratio(ProbeKind kind, const SpectralField& f, const SpectralField& g, const ProbeParams& params,
                   const DyadicFilterBank& bank);

struct ProbeReport {
  ProbeKind kind;
  std::vector<double> ratios;
  double c_emp = 0.0;  // max ratio
  bool all_finite = true;
};

ProbeReport inequality_probe(ProbeKind kind, const std::vector<std::pair<SpectralField, SpectralField>>& trials,
                             const ProbeParams& params, const DyadicFilterBank& bank);

/// Seeded corpus of trial pairs band-limited below N/4 so all products are exact.
std::vector<std::pair<SpectralField, SpectralField>> probe_corpus(std::size_t n_modes, std::size_t trials,
                                                                  std::uint64_t seed);

/// Per-block 2^{q sigma} ||[v d_x, Delta_q] f||_{L^p}, before the l^r reduction.
std::vector<double> commutator_block_norms(const SpectralField& v, const SpectralField& f, double sigma,
                                           Integrability p, const DyadicFilterBank& bank);

}  // namespace chsys
