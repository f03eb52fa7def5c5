#include "chsys/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chsys/initial_data.hpp"

namespace chsys {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Root of an increasing function on [lo, hi] with f(lo) < 0 <= f(hi).
template <class F>
double bisect(F&& f, double lo, double hi) {
  for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

void require_positive_C(double C) {
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("constant C must be finite and > 0");
}

double lambda_rhs(double lambda, double F, double C) {
  const double C3 = C * C * C;
  const double base = F + 4.0 * C3 * F * F * F / lambda;
  return 6.0 * C3 / std::numbers::ln2 * base * base * std::exp(4.0 * C3 * F * F / lambda);
}

}  // namespace

double hbar(double x, double A, double C) {
  const double C3 = C * C * C;
  return (x + 8.0 * C3 * x * x * x * A) * std::exp(4.0 * C3 * x * x * A);
}

double lifespan_level(double F0, double C) {
  require_positive_C(C);
  if (F0 == 0.0) return kInf;
  const double C3 = C * C * C;
  auto g = [&](double a) {
    const double h = hbar(F0, a, C);
    return a - std::numbers::ln2 / (12.0 * C3 * h * h);
  };
  // hbar >= F0, so the root lies below ln2 / (12 C^3 F0^2).
  return bisect(g, 0.0, std::numbers::ln2 / (12.0 * C3 * F0 * F0));
}

double lifespan_condition(double F0, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma, double C) {
  return time_at_coefficient_integral(alpha, gamma, lifespan_level(F0, C));
}

double global_sufficient_condition(double F0, double C) {
  require_positive_C(C);
  if (F0 == 0.0) return kInf;
  return std::numbers::ln2 / (24.0 * C * C * C * F0 * F0);
}

double uniform_bound(double F0, double A, double C) { return 2.0 * C * hbar(F0, A, C); }

double blowup_lower_bound_critical(double F0, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma,
                                   double C) {
  require_positive_C(C);
  const double level = F0 == 0.0 ? kInf : 1.0 / (C * F0 * F0);
  return time_at_coefficient_integral(alpha, gamma, level);
}

double blowup_lower_bound_noncritical(double G0, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma,
                                      double C) {
  require_positive_C(C);
  const double base = std::numbers::sqrt2 * std::numbers::e + G0;
  return time_at_coefficient_integral(alpha, gamma, 1.0 / (C * std::pow(base, 6)));
}

double lambda_threshold(double F, double C) {
  require_positive_C(C);
  if (F == 0.0) return 0.0;
  auto h = [&](double lambda) { return lambda - lambda_rhs(lambda, F, C); };
  double hi = 1.0;
  while (h(hi) < 0.0) hi *= 2.0;
  return bisect(h, 0.0, hi);
}

double lambda_threshold(DampedForm form, double m0_norm, double n0_norm, double C) {
  return lambda_threshold(form == DampedForm::forq ? m0_norm : m0_norm + n0_norm, C);
}

void HarnessSettings::validate() const {
  for (double c : {C, lifespan_C(), critical_C(), noncritical_C(), lambda_C()}) require_positive_C(c);
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ConfigError("harness epsilon must lie in (0, 1/2)");
}

BoundsReport evaluate_bounds(const SpectralField& m0, const SpectralField& n0, const CoefficientSchedule& alpha,
                             const CoefficientSchedule& gamma, const HarnessSettings& settings,
                             const DyadicFilterBank& bank) {
  settings.validate();
  BoundsReport rep;
  rep.C = settings.C;
  const double m_norm = b_2_1(m0, 0.5, bank);
  const double n_norm = b_2_1(n0, 0.5, bank);
  rep.F0 = m_norm + n_norm;
  const BesovParams sub{0.5 + settings.epsilon, Integrability::two, settings.r, false};
  rep.G0 = besov_norm(m0, sub, bank) + besov_norm(n0, sub, bank);
  rep.A_infinity = coefficient_integral_to_infinity(alpha, gamma);

  const double Cl = settings.lifespan_C();
  rep.K_threshold = lifespan_level(rep.F0, Cl);
  rep.T_local = time_at_coefficient_integral(alpha, gamma, rep.K_threshold);
  rep.A_at_T_local = std::isinf(rep.T_local) ? rep.A_infinity : coefficient_integral(alpha, gamma, 0.0, rep.T_local);
  rep.hbar_at_F0 = hbar(rep.F0, rep.A_at_T_local, Cl);
  rep.uniform_bound = uniform_bound(rep.F0, rep.A_at_T_local, Cl);
  rep.global_threshold = global_sufficient_condition(rep.F0, Cl);
  rep.global_condition_satisfied = rep.A_infinity <= rep.global_threshold;

  rep.T_star_lower_critical = blowup_lower_bound_critical(rep.F0, alpha, gamma, settings.critical_C());
  rep.T_prime_lower_noncritical = blowup_lower_bound_noncritical(rep.G0, alpha, gamma, settings.noncritical_C());

  const double Cd = settings.lambda_C();
  if (m0 == n0) rep.lambda_threshold_forq = lambda_threshold(DampedForm::forq, m_norm, n_norm, Cd);
  rep.lambda_threshold_sqq = lambda_threshold(DampedForm::sqq, m_norm, n_norm, Cd);
  return rep;
}

ContinuityReport continuity_probe(const State& initial, std::span<const double> deltas, const Model& model,
                                  const IntegratorConfig& cfg_in, std::uint64_t seed) {
  for (double d : deltas) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("continuity deltas must be finite and >= 0");
  }
  IntegratorConfig cfg = cfg_in;
  cfg.snapshot_every = 1;
  const std::size_t n_modes = initial.n_modes();
  const DyadicFilterBank bank = build_filters(n_modes, cfg.filter);

  auto unit_field = [&](std::uint64_t s) {
    const std::size_t top = std::min<std::size_t>(6, retained_band(n_modes, cfg.dealias));
    SpectralField f = make_field(RandomBandLimited{top, 1.0, s}, n_modes);
    return (1.0 / b_2_1(f, 0.5, bank)) * f;
  };
  const SpectralField pm = unit_field(seed);
  const SpectralField pn = unit_field(seed + 1);

  ContinuityReport rep;
  const RunResult base = run(initial, model, cfg);
  rep.baseline_status = base.status;

  for (double delta : deltas) {
    ContinuityEntry e;
    e.delta = delta;
    const State perturbed(initial.m + delta * pm, initial.n + delta * pn, initial.drift);
    const RunResult pert = run(perturbed, model, cfg, {}, base.dt_history);
    if (pert.status != RunStatus::completed || base.status != RunStatus::completed) {
      e.flagged = true;
      e.note = std::string("perturbed run ") + to_string(pert.status) + ", baseline " + to_string(base.status);
    }
    const std::size_t count = std::min(base.snapshots.size(), pert.snapshots.size());
    for (std::size_t i = 0; i < count; ++i) {
      const State& a = base.snapshots[i].state;
      const State& b = pert.snapshots[i].state;
      const SpectralField dm = a.m - b.m;
      const SpectralField dn = a.n - b.n;
      e.distance_minus = std::max(e.distance_minus, b_2_1(dm, -0.5, bank) + b_2_1(dn, -0.5, bank));
      e.distance_plus = std::max(e.distance_plus, b_2_1(dm, 0.5, bank) + b_2_1(dn, 0.5, bank));
    }
    rep.entries.push_back(std::move(e));
  }

  std::vector<const ContinuityEntry*> usable;
  for (const auto& e : rep.entries) {
    if (!e.flagged && e.delta > 0.0) usable.push_back(&e);
  }
  std::sort(usable.begin(), usable.end(), [](auto* a, auto* b) { return a->delta > b->delta; });
  for (std::size_t i = 1; i < usable.size(); ++i) {
    if (usable[i]->delta == usable[i - 1]->delta) continue;
    if (!(usable[i]->distance_minus < usable[i - 1]->distance_minus) ||
        !(usable[i]->distance_plus < usable[i - 1]->distance_plus)) {
      rep.monotone = false;
    }
  }

  auto fit = [&](auto dist) -> std::optional<double> {
    std::vector<std::pair<double, double>> pts;
    for (auto* e : usable) {
      if (dist(*e) > 0.0) pts.emplace_back(std::log(e->delta), std::log(dist(*e)));
    }
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0;
    for (auto [x, y] : pts) sx += x, sy += y;
    const double mx = sx / pts.size(), my = sy / pts.size();
    double sxx = 0, sxy = 0;
    for (auto [x, y] : pts) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
  };
  rep.slope_minus = fit([](const ContinuityEntry& e) { return e.distance_minus; });
  rep.slope_plus = fit([](const ContinuityEntry& e) { return e.distance_plus; });
  return rep;
}

}  // namespace chsys
