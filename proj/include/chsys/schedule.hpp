#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace chsys {

/// Time-dependent coefficient alpha(t) or gamma(t).
class CoefficientSchedule {
 public:
  struct Zero {};
  struct Constant {
    double value = 0.0;
  };
  /// amplitude * e^{-2 rate t}, rate > 0
  struct ExpDecay {
    double amplitude = 1.0;
    double rate = 1.0;
  };
  /// Linear interpolation between strictly increasing knots, constant beyond.
  struct Table {
    std::vector<std::pair<double, double>> points;
  };
  using Variant = std::variant<Zero, Constant, ExpDecay, Table>;

  CoefficientSchedule() = default;
  CoefficientSchedule(Variant v);  // NOLINT: implicit by intent

  static CoefficientSchedule zero() { return {Zero{}}; }
  static CoefficientSchedule constant(double value) { return {Constant{value}}; }
  static CoefficientSchedule exp_decay(double amplitude, double rate) { return {ExpDecay{amplitude, rate}}; }
  static CoefficientSchedule table(std::vector<std::pair<double, double>> points) { return {Table{std::move(points)}}; }

  const Variant& variant() const { return v_; }
  double value(double t) const;

  /// \int_s^t |value(t')| dt'. Tables and constants are integrated exactly,
  /// exponentials by adaptive Simpson quadrature.
  double integral_abs(double s, double t) const;

  /// \int_0^infty |value|, +infinity when the schedule does not decay to zero.
  double integral_abs_to_infinity() const;

  bool is_identically_zero() const;

 private:
  Variant v_ = Zero{};
};

/// A(s,t) = \int_s^t (|alpha| + |gamma|).
double coefficient_integral(const CoefficientSchedule& alpha, const CoefficientSchedule& gamma, double s, double t);
double coefficient_integral_to_infinity(const CoefficientSchedule& alpha, const CoefficientSchedule& gamma);

/// sup{t >= 0 : A(0,t) <= level}; +infinity when A(0,infty) <= level.
double time_at_coefficient_integral(const CoefficientSchedule& alpha, const CoefficientSchedule& gamma, double level);

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol);

}  // namespace chsys

#include "chsys/detail/adaptive_simpson.ipp"
