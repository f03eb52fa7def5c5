#include "chsys/equivalence.hpp"

#include <algorithm>
#include <cmath>

namespace chsys {
namespace {

double sup_distance(const SpectralField& a, const SpectralField& b) { return linf_norm(a - b); }

}  // namespace

EquivalenceReport damping_equivalence(const State& initial, DampedForm form, double lambda, IntegratorConfig cfg,
                                      const BlowupMonitor& monitor) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("equivalence lambda must be finite and >= 0");
  if (form == DampedForm::forq && !(initial.m == initial.n)) {
    throw InconsistentReduction("lambda-FORQ equivalence requires n0 == m0");
  }
  cfg.snapshot_every = 1;

  Model damped;
  damped.form = form == DampedForm::forq ? ModelForm::damped_forq : ModelForm::damped_sqq;
  damped.lambda = lambda;
  const RunResult direct = run(State(initial.m, initial.n), damped, cfg, monitor);

  Model nonlocal;
  nonlocal.form = ModelForm::nonlocal;
  nonlocal.alpha = lambda > 0.0 ? CoefficientSchedule::exp_decay(1.0, lambda) : CoefficientSchedule::constant(1.0);
  nonlocal.gamma = CoefficientSchedule::zero();
  const RunResult rescaled = run(State(initial.m, initial.n), nonlocal, cfg, monitor, direct.dt_history);

  EquivalenceReport report;
  report.form = form;
  report.lambda = lambda;
  report.direct_status = direct.status;
  report.nonlocal_status = rescaled.status;
  const std::size_t count = std::min(direct.snapshots.size(), rescaled.snapshots.size());
  for (std::size_t i = 0; i < count; ++i) {
    const Snapshot& d = direct.snapshots[i];
    const Snapshot& r = rescaled.snapshots[i];
    const SpectralField dm = translate(d.state.m, -d.state.drift);
    const SpectralField dn = translate(d.state.n, -d.state.drift);
    const double g1 = std::exp(lambda * d.t);
    const double g2 = std::exp(2.0 * lambda * d.t);
    report.max_discrepancy =
        std::max({report.max_discrepancy, sup_distance(r.state.m, g1 * dm), sup_distance(r.state.n, g1 * dn)});
    report.discrepancy_exp2 =
        std::max({report.discrepancy_exp2, sup_distance(r.state.m, g2 * dm), sup_distance(r.state.n, g2 * dn)});
    report.t_final = d.t;
    report.steps = d.step;
    report.drift = d.state.drift;
  }
  return report;
}

}  // namespace chsys
