#pragma once

// The non-isospectral two-component cubic Camassa-Holm system in its nonlocal
// transport form on the torus,
//
//   m_t + rho m_x = -m (psi - mean(psi)),   n_t + rho n_x = -n (psi - mean(psi)),
//   psi = (alpha + gamma)(v + v_x) m - alpha (u - u_x) n,   rho = d_x^{-1} psi,
//   m = u - u_xx,   n = v - v_xx,
//
// together with the weakly damped isospectral reductions (lambda-FORQ/MCH and
// lambda-SQQ), which transport with the full velocity instead of a zero-mean one.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "chsys/schedule.hpp"
#include "chsys/spectral.hpp"

namespace chsys {

struct State {
  SpectralField m;
  SpectralField n;
  /// Accumulated frame translation \int_0^t mean(transport velocity). Zero
  /// for the zero-mean gauge; the damped equations drift by it.
  double drift = 0.0;

  State() = default;
  State(SpectralField m_, SpectralField n_, double drift_ = 0.0);

  std::size_t n_modes() const { return m.n_modes(); }
  bool all_finite() const { return m.all_finite() && n.all_finite() && std::isfinite(drift); }
};

/// Time derivative of a State.
struct Tendency {
  SpectralField dm;
  SpectralField dn;
  double drift_rate = 0.0;
};

struct DerivedFields {
  SpectralField u;
  SpectralField v;
  GridField psi;
  double psi_bar = 0.0;
  SpectralField rho;  // zero mean
};

class InconsistentReduction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::pair<SpectralField, SpectralField> reconstruct_velocities(const State& s);

struct PsiResult {
  GridField psi;
  double psi_bar = 0.0;
  SpectralField psi_hat;
};

/// psi = (alpha + gamma)(v + v_x) m - alpha (u - u_x) n from dealiased products.
PsiResult compute_psi(const State& s, double alpha, double gamma, bool dealias = true);

/// rho = d_x^{-1} psi (zero mean, d_x rho = psi - mean(psi)).
SpectralField compute_rho(const GridField& psi);
SpectralField compute_rho(const SpectralField& psi_hat);

DerivedFields derive_fields(const State& s, double alpha, double gamma, bool dealias = true);

enum class TransportForm {
  divergence,  // dm = -d_x(rho m)
  advective,   // dm = -rho m_x - m (psi - mean(psi))
};

struct RhsOptions {
  bool dealias = true;
  TransportForm form = TransportForm::divergence;
  /// Constant c added to rho; the solution is translated by c t.
  double gauge_offset = 0.0;
};

Tendency rhs_nonlocal(const State& s, double t, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma,
                      const RhsOptions& opts = {});

enum class DampedForm { forq, sqq };

/// lambda-FORQ/MCH (requires n == m) or lambda-SQQ with damping lambda >= 0.
Tendency rhs_damped(const State& s, double lambda, DampedForm form, bool dealias = true);

/// Transport velocity of the damped forms: u^2 - u_x^2 (forq) or (u - u_x)(v + v_x) (sqq).
SpectralField damped_velocity(const State& s, DampedForm form, bool dealias = true);

enum class ModelForm { nonlocal, damped_forq, damped_sqq };

const char* to_string(ModelForm form);
ModelForm model_form_from_string(const std::string& name);

/// Everything the time stepper needs to evaluate a right-hand side.
struct Model {
  ModelForm form = ModelForm::nonlocal;
  CoefficientSchedule alpha = CoefficientSchedule::constant(1.0);
  CoefficientSchedule gamma = CoefficientSchedule::zero();
  double lambda = 0.0;
  TransportForm transport = TransportForm::divergence;
  double gauge_offset = 0.0;

  /// alpha(t), gamma(t) used by the blow-up functional. The damped forms are
  /// isospectral reductions with alpha = 1, gamma = 0.
  std::pair<double, double> coefficients(double t) const;
};

Tendency evaluate_rhs(const Model& model, const State& s, double t, bool dealias = true);

/// Transport velocity rho and its gradient psi - mean(psi) on the grid, for step-size control.
struct TransportFields {
  GridField rho;
  GridField rho_x;
  double psi_bar = 0.0;
};
TransportFields transport_fields(const Model& model, const State& s, double t, bool dealias = true);

}  // namespace chsys
