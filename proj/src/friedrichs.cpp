#include "chsys/friedrichs.hpp"

#include <array>
#include <cmath>

namespace chsys {
namespace {

struct FrozenCoefficients {
  SpectralField rho;
  SpectralField source;  // psi - mean(psi)
};

FrozenCoefficients freeze(const State& y, double t, const Model& model, bool dealias) {
  const auto [a, g] = model.coefficients(t);
  PsiResult psi = compute_psi(y, a, g, dealias);
  FrozenCoefficients c{compute_rho(psi.psi_hat), std::move(psi.psi_hat)};
  c.source.half()[0] = Complex{};
  return c;
}

Tendency linear_rhs(const State& s, const FrozenCoefficients& c, bool dealias) {
  Tendency out;
  out.dm = -(dealiased_product(c.rho, derivative(s.m), dealias) + dealiased_product(s.m, c.source, dealias));
  out.dn = -(dealiased_product(c.rho, derivative(s.n), dealias) + dealiased_product(s.n, c.source, dealias));
  return out;
}

State axpy(const State& y, const Tendency& k, double h) {
  State out = y;
  out.m += h * k.dm;
  out.n += h * k.dn;
  return out;
}

using Stages = std::array<State, 4>;

double f_norm(const State& s, const DyadicFilterBank& bank) { return b_2_1(s.m, 0.5, bank) + b_2_1(s.n, 0.5, bank); }

double d_norm(const State& a, const State& b, const DyadicFilterBank& bank) {
  return b_2_inf(a.m - b.m, -0.5, bank) + b_2_inf(a.n - b.n, -0.5, bank);
}

}  // namespace

std::vector<double> uniform_steps(double t_end, double dt_max) {
  if (!(t_end > 0.0) || !(dt_max > 0.0)) throw ConfigError("uniform_steps needs t_end > 0 and dt_max > 0");
  const auto count = static_cast<std::size_t>(std::ceil(t_end / dt_max - 1e-12));
  return std::vector<double>(std::max<std::size_t>(count, 1), t_end / static_cast<double>(std::max<std::size_t>(count, 1)));
}

FriedrichsResult friedrichs_iterate(const SpectralField& m0, const SpectralField& n0, std::size_t K,
                                    const Model& model, const IntegratorConfig& cfg,
                                    std::span<const double> dt_sequence) {
  if (K < 1) throw ConfigError("Friedrichs iteration needs K >= 1");
  if (model.form != ModelForm::nonlocal) throw ConfigError("Friedrichs iteration is defined for the nonlocal form");
  require_same_grid(m0, n0, "friedrichs_iterate");
  cfg.validate();

  const std::vector<double> steps =
      dt_sequence.empty() ? uniform_steps(cfg.t_end, cfg.dt_max) : std::vector<double>(dt_sequence.begin(), dt_sequence.end());
  const std::size_t n_modes = m0.n_modes();
  const DyadicFilterBank bank = build_filters(n_modes, cfg.filter);
  const std::size_t band = retained_band(n_modes, cfg.dealias);
  const SpectralField m_data = truncate(m0, band);
  const SpectralField n_data = truncate(n0, band);

  FriedrichsResult result;
  result.times.push_back(0.0);
  for (double dt : steps) result.times.push_back(result.times.back() + dt);
  const std::size_t n_steps = steps.size();

  // Iterate 1 is constant in time, so all of its stages coincide.
  const State first(low_pass(1, m_data, bank), low_pass(1, n_data, bank));
  std::vector<Stages> prev(n_steps, Stages{first, first, first, first});
  {
    FriedrichsIterate it{1, std::vector<State>(n_steps + 1, first), f_norm(first, bank)};
    result.iterates.push_back(std::move(it));
  }

  for (std::size_t k = 1; k <= K; ++k) {
    const int q = static_cast<int>(k) + 1;
    State y(low_pass(q, m_data, bank), low_pass(q, n_data, bank));
    FriedrichsIterate next{k + 1, {y}, f_norm(y, bank)};
    std::vector<Stages> stages(n_steps);
    bool finite = y.all_finite();

    // Overflow inside a product surfaces as InvalidField from the transforms.
    try {
      for (std::size_t j = 0; j < n_steps && finite; ++j) {
        const double t = result.times[j];
        const double dt = steps[j];
        const Stages& p = prev[j];
        const Tendency k1 = linear_rhs(y, freeze(p[0], t, model, cfg.dealias), cfg.dealias);
        const State y2 = axpy(y, k1, 0.5 * dt);
        const Tendency k2 = linear_rhs(y2, freeze(p[1], t + 0.5 * dt, model, cfg.dealias), cfg.dealias);
        const State y3 = axpy(y, k2, 0.5 * dt);
        const Tendency k3 = linear_rhs(y3, freeze(p[2], t + 0.5 * dt, model, cfg.dealias), cfg.dealias);
        const State y4 = axpy(y, k3, dt);
        const Tendency k4 = linear_rhs(y4, freeze(p[3], t + dt, model, cfg.dealias), cfg.dealias);

        stages[j] = Stages{y, y2, y3, y4};
        const double h = dt / 6.0;
        y.m += h * (k1.dm + 2.0 * k2.dm + 2.0 * k3.dm + k4.dm);
        y.n += h * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn);
        finite = y.all_finite();
        next.trajectory.push_back(y);
        next.f_sup = std::max(next.f_sup, f_norm(y, bank));
      }
    } catch (const InvalidField&) {
      finite = false;
    }

    if (!finite) {
      result.halted_at = k + 1;
      result.diagnostic = "iterate " + std::to_string(k + 1) + " produced non-finite values";
      break;
    }

    const FriedrichsIterate& last = result.iterates.back();
    std::vector<double> d(n_steps + 1);
    double sup = 0.0;
    for (std::size_t j = 0; j <= n_steps; ++j) {
      d[j] = d_norm(next.trajectory[j], last.trajectory[j], bank);
      sup = std::max(sup, d[j]);
    }
    result.differences.push_back(std::move(d));
    result.d_sup.push_back(sup);
    result.iterates.push_back(std::move(next));
    prev = std::move(stages);
  }
  return result;
}

}  // namespace chsys
