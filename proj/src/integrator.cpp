#include "chsys/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chsys {
namespace {

State advance(const State& s, const Tendency& k, double h) {
  State out = s;
  out.m += h * k.dm;
  out.n += h * k.dn;
  out.drift += h * k.drift_rate;
  return out;
}

// Overflow inside a product shows up as InvalidField from the transforms.
Tendency stage_rhs(const Model& model, const State& s, double t, bool dealias, const char* stage) {
  try {
    return evaluate_rhs(model, s, t, dealias);
  } catch (const InvalidField&) {
    throw NonFiniteState(std::string("non-finite values in RK4 ") + stage);
  }
}

void require_finite(const State& s, const char* stage) {
  if (!s.all_finite()) throw NonFiniteState(std::string("non-finite values in RK4 ") + stage);
}

double functional_weight(const Model& model, double t) {
  const auto [a, g] = model.coefficients(t);
  return std::abs(a) + std::abs(g);
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be finite and > 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(dt_max > 0.0) || !(dt_min > 0.0)) throw ConfigError("dt_max and dt_min must be > 0");
  if (!(dt_min < dt_max)) throw ConfigError("dt_min must be smaller than dt_max");
  if (series_every == 0) throw ConfigError("series_every must be >= 1");
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::aborted: return "aborted";
  }
  return "?";
}

State step_rk4(const State& s, double t, double dt, const Model& model, bool dealias) {
  const Tendency k1 = stage_rhs(model, s, t, dealias, "stage 1");
  const State y2 = advance(s, k1, 0.5 * dt);
  require_finite(y2, "stage 2");
  const Tendency k2 = stage_rhs(model, y2, t + 0.5 * dt, dealias, "stage 2");
  const State y3 = advance(s, k2, 0.5 * dt);
  require_finite(y3, "stage 3");
  const Tendency k3 = stage_rhs(model, y3, t + 0.5 * dt, dealias, "stage 3");
  const State y4 = advance(s, k3, dt);
  require_finite(y4, "stage 4");
  const Tendency k4 = stage_rhs(model, y4, t + dt, dealias, "stage 4");

  State out = s;
  const double h = dt / 6.0;
  out.m += h * (k1.dm + 2.0 * k2.dm + 2.0 * k3.dm + k4.dm);
  out.n += h * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn);
  out.drift += h * (k1.drift_rate + 2.0 * k2.drift_rate + 2.0 * k3.drift_rate + k4.drift_rate);
  require_finite(out, "update");
  return out;
}

double cfl_step(double rho_inf, double rho_x_inf, std::size_t n_modes, double cfl, double dt_max) {
  double dt = dt_max;
  const double dx = 1.0 / static_cast<double>(n_modes);
  if (rho_inf > 0.0) dt = std::min(dt, cfl * dx / rho_inf);
  if (rho_x_inf > 0.0) dt = std::min(dt, cfl / rho_x_inf);
  return dt;
}

double adaptive_dt(const State& s, double t, const Model& model, const IntegratorConfig& cfg) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  TransportFields tf;
  try {
    tf = transport_fields(model, s, t, cfg.dealias);
  } catch (const InvalidField&) {
    return kNaN;
  }
  const double rho_inf = tf.rho.max_abs();
  const double rho_x_inf = tf.rho_x.max_abs();
  if (!std::isfinite(rho_inf) || !std::isfinite(rho_x_inf)) return kNaN;
  return cfl_step(rho_inf, rho_x_inf, s.n_modes(), cfg.cfl, cfg.dt_max);
}

double tail_ratio(const SpectralField& f, bool dealias) {
  const std::size_t band = retained_band(f.n_modes(), dealias);
  const std::size_t cut = 2 * band / 3;
  auto h = f.half();
  const std::size_t nyq = h.size() - 1;
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t k = 0; k <= nyq; ++k) {
    const double e = (k == 0 || k == nyq ? 1.0 : 2.0) * std::norm(h[k]);
    total += e;
    if (k > cut) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

SeriesRow measure(const State& s, double t, const Model& model, const DyadicFilterBank& bank, bool dealias) {
  SeriesRow row;
  row.t = t;
  row.mass_m = mean(s.m);
  row.mass_n = mean(s.n);
  if (model.form == ModelForm::nonlocal) {
    const auto [a, g] = model.coefficients(t);
    row.psi_bar = compute_psi(s, a, g, dealias).psi_bar;
  }
  row.b12_21_m = b_2_1(s.m, 0.5, bank);
  row.b12_21_n = b_2_1(s.n, 0.5, bank);
  const BesovParams hb0{0.0, Integrability::infinity, Summability::one, true};
  const auto blocks_m = weighted_block_norms(s.m, hb0, bank);
  const auto blocks_n = weighted_block_norms(s.n, hb0, bank);
  row.hb0_inf1_m = lr_norm(blocks_m, Summability::one);
  row.hb0_inf1_n = lr_norm(blocks_n, Summability::one);
  row.hb0_inf2_m = lr_norm(blocks_m, Summability::two);
  row.hb0_inf2_n = lr_norm(blocks_n, Summability::two);
  row.linf_m = linf_norm(s.m);
  row.linf_n = linf_norm(s.n);
  row.tail_ratio = std::max(tail_ratio(s.m, dealias), tail_ratio(s.n, dealias));
  return row;
}

RunResult run(const State& initial, const Model& model, const IntegratorConfig& cfg, BlowupMonitor monitor,
              std::span<const double> dt_sequence) {
  cfg.validate();
  const std::size_t n_modes = initial.n_modes();
  const DyadicFilterBank bank = build_filters(n_modes, cfg.filter);
  const bool replay = !dt_sequence.empty();

  RunResult result;
  State s = initial;
  if (cfg.dealias) {
    const std::size_t band = retained_band(n_modes, true);
    s.m = truncate(s.m, band);
    s.n = truncate(s.n, band);
  }
  double t = 0.0;
  std::size_t step = 0;

  SeriesRow row = measure(s, t, model, bank, cfg.dealias);
  auto integrand15 = [&](const SeriesRow& r) {
    return functional_weight(model, r.t) * (r.hb0_inf1_m * r.hb0_inf1_m + r.hb0_inf1_n * r.hb0_inf1_n);
  };
  auto integrand17 = [&](const SeriesRow& r) {
    return functional_weight(model, r.t) * (r.hb0_inf2_m * r.hb0_inf2_m + r.hb0_inf2_n * r.hb0_inf2_n);
  };
  result.series.push_back(row);
  result.snapshots.push_back({0, 0.0, s});
  bool row_recorded = true;
  const auto flag_blowup = [&](std::string why) {
    result.status = RunStatus::blowup_detected;
    result.blowup_time = t;
    result.diagnostic = std::move(why);
  };

  // Relative slack so the final clipped step lands exactly on t_end.
  const double t_tol = 1e-13 * cfg.t_end;
  while (cfg.t_end - t > t_tol) {
    double dt = 0.0;
    if (replay) {
      if (step >= dt_sequence.size()) break;
      dt = dt_sequence[step];
    } else {
      dt = adaptive_dt(s, t, model, cfg);
      if (std::isnan(dt)) {
        result.status = RunStatus::aborted;
        result.blowup_time = t;
        result.diagnostic = "non-finite transport velocity";
        break;
      }
      if (dt < cfg.dt_min) {
        flag_blowup("time step underflow: dt=" + std::to_string(dt) + " < dt_min");
        break;
      }
    }
    const bool last = dt >= cfg.t_end - t - t_tol;
    if (last) dt = cfg.t_end - t;

    State next;
    try {
      next = step_rk4(s, t, dt, model, cfg.dealias);
    } catch (const NonFiniteState& e) {
      result.status = RunStatus::aborted;
      result.blowup_time = t;
      result.diagnostic = e.what();
      break;
    }
    const double t_next = last ? cfg.t_end : t + dt;
    SeriesRow next_row = measure(next, t_next, model, bank, cfg.dealias);
    next_row.dt = dt;

    if (std::max(next_row.linf_m, next_row.linf_n) > monitor.linf_threshold) {
      flag_blowup("L-infinity norm exceeded threshold at t=" + std::to_string(t_next));
      break;
    }
    if (next_row.tail_ratio > monitor.tail_ratio_threshold) {
      flag_blowup("spectral tail ratio exceeded threshold at t=" + std::to_string(t_next));
      break;
    }

    monitor.cumulative_integral += 0.5 * dt * (integrand15(row) + integrand15(next_row));
    monitor.cumulative_integral_17 += 0.5 * dt * (integrand17(row) + integrand17(next_row));
    next_row.blowup_integral_thm15 = monitor.cumulative_integral;
    next_row.blowup_integral_thm17 = monitor.cumulative_integral_17;

    s = std::move(next);
    t = t_next;
    row = next_row;
    ++step;
    result.dt_history.push_back(dt);

    row_recorded = step % cfg.series_every == 0;
    if (row_recorded) result.series.push_back(row);
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) result.snapshots.push_back({step, t, s});
  }

  if (!row_recorded) result.series.push_back(row);
  if (result.snapshots.back().step != step) result.snapshots.push_back({step, t, s});
  result.final_state = std::move(s);
  result.t_final = t;
  result.monitor = monitor;
  return result;
}

}  // namespace chsys
