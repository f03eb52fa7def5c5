#pragma once

// Friedrichs iteration for the nonlocal system: each iterate solves the linear
// transport problem
//
//   m_t + rho_k m_x = -m (psi_k - mean(psi_k)),  m(0) = S_{k+1} m0   (same for n)
//
// with rho_k, psi_k taken from the previous iterate. Coefficients are frozen per
// RK4 stage: stage s of step j of iterate k+1 uses the fields built from stage s
// of step j of iterate k, evaluated at the same stage time. The fixed point of
// the iteration is therefore the RK4 trajectory of the nonlinear advective
// system on the same step sequence.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chsys/integrator.hpp"

namespace chsys {

struct FriedrichsIterate {
  std::size_t k = 0;
  std::vector<State> trajectory;  // at FriedrichsResult::times
  /// sup_t ||m_k||_{B^{1/2}_{2,1}} + ||n_k||_{B^{1/2}_{2,1}}
  double f_sup = 0.0;
};

struct FriedrichsResult {
  std::vector<double> times;
  std::vector<FriedrichsIterate> iterates;  // k = 1..K+1 unless halted
  /// differences[k-1][j] = D_k(t_j) = ||m_{k+1}-m_k||_{B^{-1/2}_{2,inf}} + same for n
  std::vector<std::vector<double>> differences;
  std::vector<double> d_sup;  // sup_t D_k
  std::optional<std::size_t> halted_at;  // iterate index that went non-finite
  std::string diagnostic;
};

/// K linear solves starting from the time-constant iterate (S_1 m0, S_1 n0).
/// Steps are dt_sequence when given, otherwise ceil(t_end/dt_max) equal steps.
/// The model must be the nonlocal form.
FriedrichsResult friedrichs_iterate(const SpectralField& m0, const SpectralField& n0, std::size_t K,
                                    const Model& model, const IntegratorConfig& cfg,
                                    std::span<const double> dt_sequence = {});

/// Uniform step sequence covering [0, t_end] with steps no longer than dt_max.
std::vector<double> uniform_steps(double t_end, double dt_max);

}  // namespace chsys
