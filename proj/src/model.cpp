#include "chsys/model.hpp"

#include "chsys/errors.hpp"

namespace chsys {

State::State(SpectralField m_, SpectralField n_, double drift_) : m(std::move(m_)), n(std::move(n_)), drift(drift_) {
  require_same_grid(m, n, "State");
}

std::pair<SpectralField, SpectralField> reconstruct_velocities(const State& s) {
  return {helmholtz_inverse(s.m), helmholtz_inverse(s.n)};
}

PsiResult compute_psi(const State& s, double alpha, double gamma, bool dealias) {
  const auto [u, v] = reconstruct_velocities(s);
  SpectralField psi_hat(s.n_modes());
  if (alpha + gamma != 0.0) psi_hat += (alpha + gamma) * dealiased_product(v + derivative(v), s.m, dealias);
  if (alpha != 0.0) psi_hat -= alpha * dealiased_product(u - derivative(u), s.n, dealias);
  return {to_grid(psi_hat), mean(psi_hat), std::move(psi_hat)};
}

SpectralField compute_rho(const SpectralField& psi_hat) { return antiderivative_zero_mean(psi_hat); }

SpectralField compute_rho(const GridField& psi) { return compute_rho(to_spectral(psi)); }

DerivedFields derive_fields(const State& s, double alpha, double gamma, bool dealias) {
  auto [u, v] = reconstruct_velocities(s);
  PsiResult psi = compute_psi(s, alpha, gamma, dealias);
  SpectralField rho = compute_rho(psi.psi_hat);
  return {std::move(u), std::move(v), std::move(psi.psi), psi.psi_bar, std::move(rho)};
}

Tendency rhs_nonlocal(const State& s, double t, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma,
                      const RhsOptions& opts) {
  const PsiResult psi = compute_psi(s, alpha.value(t), gamma.value(t), opts.dealias);
  SpectralField rho = compute_rho(psi.psi_hat);
  rho.half()[0] += opts.gauge_offset;

  Tendency out;
  out.drift_rate = opts.gauge_offset;
  if (opts.form == TransportForm::divergence) {
    out.dm = -derivative(dealiased_product(rho, s.m, opts.dealias));
    out.dn = -derivative(dealiased_product(rho, s.n, opts.dealias));
  } else {
    SpectralField source = psi.psi_hat;
    source.half()[0] = Complex{};
    out.dm = -(dealiased_product(rho, derivative(s.m), opts.dealias) + dealiased_product(s.m, source, opts.dealias));
    out.dn = -(dealiased_product(rho, derivative(s.n), opts.dealias) + dealiased_product(s.n, source, opts.dealias));
  }
  return out;
}

SpectralField damped_velocity(const State& s, DampedForm form, bool dealias) {
  const auto [u, v] = reconstruct_velocities(s);
  const SpectralField ux = derivative(u);
  if (form == DampedForm::forq) return dealiased_product(u, u, dealias) - dealiased_product(ux, ux, dealias);
  return dealiased_product(u - ux, v + derivative(v), dealias);
}

Tendency rhs_damped(const State& s, double lambda, DampedForm form, bool dealias) {
  if (!(lambda >= 0.0)) throw ConfigError("damping lambda must be >= 0");
  if (form == DampedForm::forq && !(s.m == s.n)) {
    throw InconsistentReduction("lambda-FORQ reduction requires n == m");
  }
  const SpectralField w = damped_velocity(s, form, dealias);
  Tendency out;
  out.drift_rate = mean(w);
  out.dm = -derivative(dealiased_product(w, s.m, dealias)) - lambda * s.m;
  out.dn = form == DampedForm::forq ? out.dm : -derivative(dealiased_product(w, s.n, dealias)) - lambda * s.n;
  return out;
}

const char* to_string(ModelForm form) {
  switch (form) {
    case ModelForm::nonlocal: return "nonlocal";
    case ModelForm::damped_forq: return "damped_forq";
    case ModelForm::damped_sqq: return "damped_sqq";
  }
  return "?";
}

ModelForm model_form_from_string(const std::string& name) {
  if (name == "nonlocal") return ModelForm::nonlocal;
  if (name == "damped_forq") return ModelForm::damped_forq;
  if (name == "damped_sqq") return ModelForm::damped_sqq;
  throw ConfigError("unknown model form '" + name + "' (expected nonlocal|damped_forq|damped_sqq)");
}

std::pair<double, double> Model::coefficients(double t) const {
  if (form == ModelForm::nonlocal) return {alpha.value(t), gamma.value(t)};
  return {1.0, 0.0};
}

Tendency evaluate_rhs(const Model& model, const State& s, double t, bool dealias) {
  switch (model.form) {
    case ModelForm::nonlocal:
      return rhs_nonlocal(s, t, model.alpha, model.gamma, {dealias, model.transport, model.gauge_offset});
    case ModelForm::damped_forq:
      return rhs_damped(s, model.lambda, DampedForm::forq, dealias);
    case ModelForm::damped_sqq:
      return rhs_damped(s, model.lambda, DampedForm::sqq, dealias);
  }
  throw ConfigError("unknown model form");
}

TransportFields transport_fields(const Model& model, const State& s, double t, bool dealias) {
  if (model.form == ModelForm::nonlocal) {
    const PsiResult psi = compute_psi(s, model.alpha.value(t), model.gamma.value(t), dealias);
    SpectralField rho = compute_rho(psi.psi_hat);
    rho.half()[0] += model.gauge_offset;
    SpectralField rho_x = psi.psi_hat;
    rho_x.half()[0] = Complex{};
    return {to_grid(rho), to_grid(rho_x), psi.psi_bar};
  }
  const auto form = model.form == ModelForm::damped_forq ? DampedForm::forq : DampedForm::sqq;
  const SpectralField w = damped_velocity(s, form, dealias);
  return {to_grid(w), to_grid(derivative(w)), 0.0};
}

}  // namespace chsys
