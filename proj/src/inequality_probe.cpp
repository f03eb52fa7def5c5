#include "chsys/inequality_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chsys/initial_data.hpp"

namespace chsys {
namespace {

double ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  if (rhs <= 0.0) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

BesovParams b2(double s, Summability r) { return {s, Integrability::two, r, false}; }

}  // namespace

const char* to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::moser: return "moser";
    case ProbeKind::endpoint: return "endpoint";
    case ProbeKind::log_interp: return "log_interp";
    case ProbeKind::real_interp: return "real_interp";
    case ProbeKind::commutator: return "commutator";
  }
  return "?";
}

ProbeKind probe_kind_from_string(const std::string& name) {
  for (auto k : {ProbeKind::moser, ProbeKind::endpoint, ProbeKind::log_interp, ProbeKind::real_interp,
                 ProbeKind::commutator}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown inequality probe '" + name + "'");
}

void validate_probe_params(ProbeKind kind, const ProbeParams& p) {
  switch (kind) {
    case ProbeKind::moser: {
      // s1 <= 1/2 < s2 (s2 = 1/2 admitted when r = 1), s1 + s2 > 0
      const bool upper_ok = p.moser_r == Summability::one ? p.moser_s2 >= 0.5 : p.moser_s2 > 0.5;
      if (!(p.moser_s1 <= 0.5) || !upper_ok || !(p.moser_s1 + p.moser_s2 > 0.0)) {
        throw ConfigError("moser probe needs s1 <= 1/2 < s2 (s2 >= 1/2 if r = 1) and s1 + s2 > 0");
      }
      break;
    }
    case ProbeKind::endpoint:
      break;
    case ProbeKind::log_interp:
      if (!(p.log_delta > 0.0)) throw ConfigError("log_interp probe needs delta > 0");
      break;
    case ProbeKind::real_interp:
      if (!(p.interp_s1 < p.interp_s2) || !(p.interp_theta > 0.0 && p.interp_theta < 1.0)) {
        throw ConfigError("real_interp probe needs s1 < s2 and theta in (0,1)");
      }
      break;
    case ProbeKind::commutator:
      if (!(p.commutator_sigma > 0.0 && p.commutator_sigma < 1.0)) {
        throw ConfigError("commutator probe needs 0 < sigma < 1");
      }
      break;
  }
}

std::vector<double> commutator_block_norms(const SpectralField& v, const SpectralField& f, double sigma,
                                           Integrability p, const DyadicFilterBank& bank) {
  // Only the fluctuating part of v fails to commute with Delta_q.
  SpectralField v_fluct = v;
  v_fluct.half()[0] = Complex{};
  const SpectralField fx = derivative(f);
  const SpectralField transported = exact_product(v_fluct, fx);
  std::vector<double> out;
  for (int q = -1; q <= bank.q_max(); ++q) {
    SpectralField c = exact_product(v_fluct, block(q, fx, bank)) - block(q, transported, bank);
    const double norm = p == Integrability::two ? l2_norm(c) : linf_norm(c);
    out.push_back(std::exp2(q * sigma) * norm);
  }
  return out;
}

double probe_ratio(ProbeKind kind, const SpectralField& f, const SpectralField& g, const ProbeParams& p,
                   const DyadicFilterBank& bank) {
  switch (kind) {
    case ProbeKind::moser: {
      const SpectralField fg = exact_product(f, g);
      const double lhs = besov_norm(fg, b2(p.moser_s1, p.moser_r), bank);
      const double rhs = besov_norm(f, b2(p.moser_s1, p.moser_r), bank) * besov_norm(g, b2(p.moser_s2, p.moser_r), bank);
      return ratio(lhs, rhs);
    }
    case ProbeKind::endpoint: {
      const SpectralField fg = exact_product(f, g);
      const double lhs = b_2_inf(fg, -0.5, bank);
      const double rhs = b_2_1(f, -0.5, bank) * (b_2_inf(g, 0.5, bank) + linf_norm(g));
      return ratio(lhs, rhs);
    }
    case ProbeKind::log_interp: {
      const double lhs = b_2_1(f, p.log_s, bank);
      const double base = b_2_inf(f, p.log_s, bank);
      if (base == 0.0) return ratio(lhs, 0.0);
      const double upper = b_2_inf(f, p.log_s + p.log_delta, bank);
      const double rhs = (1.0 + p.log_delta) / p.log_delta * base * (1.0 + std::log(upper / base));
      return ratio(lhs, rhs);
    }
    case ProbeKind::real_interp: {
      const double theta = p.interp_theta;
      const double s_mid = theta * p.interp_s1 + (1.0 - theta) * p.interp_s2;
      const double lhs = b_2_1(f, s_mid, bank);
      const double rhs = (1.0 / theta + 1.0 / (1.0 - theta)) / (p.interp_s2 - p.interp_s1) *
                         std::pow(b_2_inf(f, p.interp_s1, bank), theta) *
                         std::pow(b_2_inf(f, p.interp_s2, bank), 1.0 - theta);
      return ratio(lhs, rhs);
    }
    case ProbeKind::commutator: {
      // f is the velocity v, g the transported field.
      const auto blocks = commutator_block_norms(f, g, p.commutator_sigma, p.commutator_p, bank);
      const double lhs = lr_norm(blocks, p.commutator_r);
      const double rhs = linf_norm(derivative(f)) *
                         besov_norm(g, {p.commutator_sigma, p.commutator_p, p.commutator_r, false}, bank);
      return ratio(lhs, rhs);
    }
  }
  return 0.0;
}

ProbeReport inequality_probe(ProbeKind kind, const std::vector<std::pair<SpectralField, SpectralField>>& trials,
                             const ProbeParams& params, const DyadicFilterBank& bank) {
  validate_probe_params(kind, params);
  ProbeReport report{kind, {}, 0.0, true};
  report.ratios.reserve(trials.size());
  for (const auto& [f, g] : trials) {
    const double r = probe_ratio(kind, f, g, params, bank);
    report.ratios.push_back(r);
    if (!std::isfinite(r)) report.all_finite = false;
    report.c_emp = std::max(report.c_emp, r);
  }
  return report;
}

std::vector<std::pair<SpectralField, SpectralField>> probe_corpus(std::size_t n_modes, std::size_t trials,
                                                                  std::uint64_t seed) {
  if (n_modes < 16) throw ConfigError("probe corpus needs N >= 16");
  std::vector<std::pair<SpectralField, SpectralField>> out;
  out.reserve(trials);
  const std::size_t cap = n_modes / 4 - 1;
  for (std::size_t i = 0; i < trials; ++i) {
    // Vary the bandwidth so the corpus covers single-block and multi-block fields.
    const std::size_t band_f = 1 + (seed + 3 * i) % cap;
    const std::size_t band_g = 1 + (seed + 7 * i + 1) % cap;
    out.emplace_back(make_field(RandomBandLimited{band_f, 1.0, seed * 1000003 + 2 * i}, n_modes),
                     make_field(RandomBandLimited{band_g, 1.0, seed * 1000003 + 2 * i + 1}, n_modes));
  }
  return out;
}

}  // namespace chsys
