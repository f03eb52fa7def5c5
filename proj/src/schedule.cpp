#include "chsys/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chsys/errors.hpp"

namespace chsys {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadratureTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double interpolate(const CoefficientSchedule::Table& table, double t) {
  const auto& pts = table.points;
  if (t <= pts.front().first) return pts.front().second;
  if (t >= pts.back().first) return pts.back().second;
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](double value, const auto& p) { return value < p.first; });
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

// \int_x^y |l| for l linear on [x, y] with end values vx, vy.
double abs_linear(double x, double y, double vx, double vy) {
  if ((vx >= 0.0 && vy >= 0.0) || (vx <= 0.0 && vy <= 0.0)) return 0.5 * (std::abs(vx) + std::abs(vy)) * (y - x);
  const double z = x + (y - x) * vx / (vx - vy);
  return 0.5 * std::abs(vx) * (z - x) + 0.5 * std::abs(vy) * (y - z);
}

double table_integral(const CoefficientSchedule::Table& table, double s, double t) {
  const auto& pts = table.points;
  // Breakpoints inside (s, t) split the integrand into linear pieces.
  std::vector<double> cuts{s};
  for (const auto& p : pts) {
    if (p.first > s && p.first < t) cuts.push_back(p.first);
  }
  cuts.push_back(t);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += abs_linear(cuts[i], cuts[i + 1], interpolate(table, cuts[i]), interpolate(table, cuts[i + 1]));
  }
  return sum;
}

double exp_integral(const CoefficientSchedule::ExpDecay& e, double s, double t) {
  const double amp = std::abs(e.amplitude);
  if (amp == 0.0) return 0.0;
  // Past this time the remaining mass is below 1e-18.
  const double cutoff = std::log(std::max(amp / (2.0 * e.rate * 1e-18), 1.0)) / (2.0 * e.rate);
  t = std::min(t, std::max(cutoff, s));
  if (t <= s) return 0.0;
  // Panels of one decay length keep each Simpson start well conditioned.
  const double panel = 1.0 / (2.0 * e.rate);
  const auto n_panels = static_cast<std::size_t>(std::ceil((t - s) / panel));
  const double width = (t - s) / static_cast<double>(std::max<std::size_t>(n_panels, 1));
  const double tol = kQuadratureTol / static_cast<double>(std::max<std::size_t>(n_panels, 1));
  auto f = [&](double x) { return amp * std::exp(-2.0 * e.rate * x); };
  double sum = 0.0;
  for (std::size_t i = 0; i < std::max<std::size_t>(n_panels, 1); ++i) {
    const double a = s + width * static_cast<double>(i);
    const double b = i + 1 == std::max<std::size_t>(n_panels, 1) ? t : a + width;
    sum += adaptive_simpson(f, a, b, tol);
  }
  return sum;
}

}  // namespace

CoefficientSchedule::CoefficientSchedule(Variant v) : v_(std::move(v)) {
  std::visit(Overloaded{
                 [](const Zero&) {},
                 [](const Constant& c) {
                   if (!std::isfinite(c.value)) throw ConfigError("constant schedule value must be finite");
                 },
                 [](const ExpDecay& e) {
                   if (!std::isfinite(e.amplitude)) throw ConfigError("exp_decay amplitude must be finite");
                   if (!(e.rate > 0.0) || !std::isfinite(e.rate)) throw ConfigError("exp_decay rate must be > 0");
                 },
                 [](const Table& tab) {
                   if (tab.points.empty()) throw ConfigError("table schedule needs at least one point");
                   for (std::size_t i = 0; i < tab.points.size(); ++i) {
                     const auto& [t, v] = tab.points[i];
                     if (!std::isfinite(t) || !std::isfinite(v)) throw ConfigError("table schedule entries must be finite");
                     if (i > 0 && !(t > tab.points[i - 1].first)) {
                       throw ConfigError("table schedule times must be strictly increasing");
                     }
                   }
                 },
             },
             v_);
}

double CoefficientSchedule::value(double t) const {
  return std::visit(Overloaded{
                        [](const Zero&) { return 0.0; },
                        [](const Constant& c) { return c.value; },
                        [t](const ExpDecay& e) { return e.amplitude * std::exp(-2.0 * e.rate * t); },
                        [t](const Table& tab) { return interpolate(tab, t); },
                    },
                    v_);
}

double CoefficientSchedule::integral_abs(double s, double t) const {
  if (t <= s) return 0.0;
  return std::visit(Overloaded{
                        [](const Zero&) { return 0.0; },
                        [s, t](const Constant& c) { return std::abs(c.value) * (t - s); },
                        [s, t](const ExpDecay& e) { return exp_integral(e, s, t); },
                        [s, t](const Table& tab) { return table_integral(tab, s, t); },
                    },
                    v_);
}

double CoefficientSchedule::integral_abs_to_infinity() const {
  return std::visit(Overloaded{
                        [](const Zero&) { return 0.0; },
                        [](const Constant& c) { return c.value == 0.0 ? 0.0 : kInf; },
                        [](const ExpDecay& e) {
                          const double amp = std::abs(e.amplitude);
                          if (amp == 0.0) return 0.0;
                          // Stop where the neglected tail amp e^{-2 rate T}/(2 rate) is below 1e-17.
                          const double horizon = std::max(0.0, std::log(amp / (2.0 * e.rate * 1e-17)) / (2.0 * e.rate));
                          return exp_integral(e, 0.0, horizon);
                        },
                        [](const Table& tab) {
                          if (tab.points.back().second != 0.0) return kInf;
                          return table_integral(tab, 0.0, std::max(0.0, tab.points.back().first));
                        },
                    },
                    v_);
}

bool CoefficientSchedule::is_identically_zero() const {
  return std::visit(Overloaded{
                        [](const Zero&) { return true; },
                        [](const Constant& c) { return c.value == 0.0; },
                        [](const ExpDecay& e) { return e.amplitude == 0.0; },
                        [](const Table& tab) {
                          return std::all_of(tab.points.begin(), tab.points.end(),
                                             [](const auto& p) { return p.second == 0.0; });
                        },
                    },
                    v_);
}

double coefficient_integral(const CoefficientSchedule& alpha, const CoefficientSchedule& gamma, double s, double t) {
  return alpha.integral_abs(s, t) + gamma.integral_abs(s, t);
}

double coefficient_integral_to_infinity(const CoefficientSchedule& alpha, const CoefficientSchedule& gamma) {
  return alpha.integral_abs_to_infinity() + gamma.integral_abs_to_infinity();
}

double time_at_coefficient_integral(const CoefficientSchedule& alpha, const CoefficientSchedule& gamma, double level) {
  if (std::isinf(level) && level > 0) return kInf;
  if (level < 0.0) return 0.0;
  if (coefficient_integral_to_infinity(alpha, gamma) <= level) return kInf;
  auto below = [&](double t) { return coefficient_integral(alpha, gamma, 0.0, t) <= level; };
  double lo = 0.0;
  double hi = 1.0;
  while (below(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace chsys
