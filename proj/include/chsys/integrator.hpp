#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chsys/littlewood_paley.hpp"
#include "chsys/model.hpp"

namespace chsys {

struct IntegratorConfig {
  double t_end = 1.0;
  double cfl = 0.4;
  double dt_max = 1e-2;
  double dt_min = 1e-10;
  bool dealias = true;
  std::size_t series_every = 1;    // record a series row every k steps (final row always)
  std::size_t snapshot_every = 0;  // 0: initial and final snapshots only
  FilterKind filter = FilterKind::smooth;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

struct BlowupMonitor {
  double linf_threshold = 1e6;
  double tail_ratio_threshold = 1e-3;
  double cumulative_integral = 0.0;      // \int (|a|+|g|)(||m||^2 + ||n||^2) in hB^0_{inf,1}
  double cumulative_integral_17 = 0.0;   // same with hB^0_{inf,2}
};

/// Thrown by step_rk4 when a stage produces non-finite values.
class NonFiniteState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesRow {
  double t = 0.0;
  double mass_m = 0.0;
  double mass_n = 0.0;
  double psi_bar = 0.0;
  double b12_21_m = 0.0;
  double b12_21_n = 0.0;
  double hb0_inf1_m = 0.0;
  double hb0_inf1_n = 0.0;
  double hb0_inf2_m = 0.0;
  double hb0_inf2_n = 0.0;
  double linf_m = 0.0;
  double linf_n = 0.0;
  double dt = 0.0;
  double tail_ratio = 0.0;
  double blowup_integral_thm15 = 0.0;
  double blowup_integral_thm17 = 0.0;

  friend bool operator==(const SeriesRow&, const SeriesRow&) = default;
};

using TimeSeries = std::vector<SeriesRow>;

struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  State state;
};

enum class RunStatus { completed, blowup_detected, aborted };
const char* to_string(RunStatus status);

struct RunResult {
  TimeSeries series;
  std::vector<Snapshot> snapshots;
  RunStatus status = RunStatus::completed;
  std::optional<double> blowup_time;  // last stable time when a monitor fired
  std::string diagnostic;
  std::vector<double> dt_history;
  State final_state;
  double t_final = 0.0;
  BlowupMonitor monitor;
};

/// Classical four-stage Runge-Kutta step.
State step_rk4(const State& s, double t, double dt, const Model& model, bool dealias = true);

/// min(dt_max, cfl dx / ||rho||_inf, cfl / ||psi - mean psi||_inf) with dx = 1/N.
double cfl_step(double rho_inf, double rho_x_inf, std::size_t n_modes, double cfl, double dt_max);
/// NaN when the transport velocity is not finite.
double adaptive_dt(const State& s, double t, const Model& model, const IntegratorConfig& cfg);

/// Fraction of spectral energy carried by the top third of the retained band.
double tail_ratio(const SpectralField& f, bool dealias = true);

/// Diagnostics of one state (the integral columns are left at zero).
SeriesRow measure(const State& s, double t, const Model& model, const DyadicFilterBank& bank, bool dealias);

/// Integrates to cfg.t_end or until the blow-up monitor fires. A non-empty
/// dt_sequence replays recorded steps instead of choosing them adaptively.
RunResult run(const State& initial, const Model& model, const IntegratorConfig& cfg,
              BlowupMonitor monitor = {}, std::span<const double> dt_sequence = {});

}  // namespace chsys
