#pragma once

// Closed-form lifespan, blow-up and dissipation bounds evaluated for given
// initial data and coefficient schedules. C is the unspecified universal
// constant of the estimates; every quantity is an exact function of the norms,
// the schedules and C.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chsys/integrator.hpp"
#include "chsys/littlewood_paley.hpp"
#include "chsys/schedule.hpp"

namespace chsys {

/// (x + 8 C^3 x^3 A) exp(4 C^3 x^2 A)
double hbar(double x, double A, double C);

/// The coefficient-integral level a* solving a = ln2 / (12 C^3 hbar(F0, a, C)^2);
/// +infinity for F0 = 0.
double lifespan_level(double F0, double C);

/// sup{T : A(0,T) <= a*}, +infinity in the global case.
double lifespan_condition(double F0, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma, double C);

/// ln2 / (24 C^3 F0^2); +infinity for F0 = 0.
double global_sufficient_condition(double F0, double C);

/// 2 C hbar(F0, A, C)
double uniform_bound(double F0, double A, double C);

/// sup{t : A(0,t) <= 1 / (C F0^2)} with F0 the B^{1/2}_{2,1} norm sum.
double blowup_lower_bound_critical(double F0, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma,
                                   double C);

/// sup{t : A(0,t) <= 1 / (C (sqrt2 e + G0)^6)} with G0 the B^{1/2+eps}_{2,r} norm sum.
double blowup_lower_bound_noncritical(double G0, const CoefficientSchedule& alpha, const CoefficientSchedule& gamma,
                                      double C);

/// Smallest lambda with lambda >= (6 C^3 / ln2) (F + 4 C^3 F^3 / lambda)^2 exp(4 C^3 F^2 / lambda).
double lambda_threshold(double F, double C);

/// F = ||m0|| for forq, ||m0|| + ||n0|| for sqq (norms in B^{1/2}_{2,1}).
double lambda_threshold(DampedForm form, double m0_norm, double n0_norm, double C);

struct HarnessSettings {
  double C = 1.0;
  double epsilon = 0.25;
  Summability r = Summability::two;
  std::optional<double> C_lifespan;
  std::optional<double> C_critical;
  std::optional<double> C_noncritical;
  std::optional<double> C_lambda;

  double lifespan_C() const { return C_lifespan.value_or(C); }
  double critical_C() const { return C_critical.value_or(C); }
  double noncritical_C() const { return C_noncritical.value_or(C); }
  double lambda_C() const { return C_lambda.value_or(C); }

  /// Throws ConfigError for C <= 0 or epsilon outside (0, 1/2).
  void validate() const;
};

struct BoundsReport {
  double F0 = 0.0;
  double G0 = 0.0;  // B^{1/2+eps}_{2,r} norm sum
  double C = 1.0;
  double A_infinity = 0.0;
  double K_threshold = 0.0;  // a*
  double T_local = 0.0;
  double A_at_T_local = 0.0;
  double hbar_at_F0 = 0.0;  // hbar(F0, A(0,T_local))
  double uniform_bound = 0.0;
  double global_threshold = 0.0;
  bool global_condition_satisfied = false;
  double T_star_lower_critical = 0.0;
  double T_prime_lower_noncritical = 0.0;
  std::optional<double> lambda_threshold_forq;
  std::optional<double> lambda_threshold_sqq;
};

BoundsReport evaluate_bounds(const SpectralField& m0, const SpectralField& n0, const CoefficientSchedule& alpha,
                             const CoefficientSchedule& gamma, const HarnessSettings& settings,
                             const DyadicFilterBank& bank);

/// Solution distances of one perturbed run against the baseline.
struct ContinuityEntry {
  double delta = 0.0;
  double distance_minus = 0.0;  // sup_t ||dm||_{B^{-1/2}_{2,1}} + ||dn||_{B^{-1/2}_{2,1}}
  double distance_plus = 0.0;   // same in B^{1/2}_{2,1}
  bool flagged = false;         // perturbed run did not complete
  std::string note;
};

struct ContinuityReport {
  std::vector<ContinuityEntry> entries;  // in the order of the requested deltas
  std::optional<double> slope_minus;     // log-log least squares over unflagged entries
  std::optional<double> slope_plus;
  /// Distances strictly decrease with delta over unflagged, nonzero deltas.
  bool monotone = true;
  RunStatus baseline_status = RunStatus::completed;
};

/// Perturbs (m0, n0) by delta times fixed random band-limited fields of unit
/// B^{1/2}_{2,1} norm and compares runs on the baseline's step sequence.
ContinuityReport continuity_probe(const State& initial, std::span<const double> deltas, const Model& model,
                                  const IntegratorConfig& cfg, std::uint64_t seed = 7);

}  // namespace chsys
