#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chsys/cli.hpp"
#include "chsys/config.hpp"
#include "chsys/harness.hpp"
#include "chsys/io.hpp"

namespace py = pybind11;
using namespace chsys;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SpectralField from_values(const Array& a) {
  if (a.ndim() != 1) throw ShapeError("expected a one-dimensional array of grid values");
  const auto* p = a.data();
  return to_spectral(GridField(static_cast<std::size_t>(a.size()), std::vector<double>(p, p + a.size())));
}

Array to_values(const SpectralField& f) {
  const GridField g = to_grid(f);
  Array out(static_cast<py::ssize_t>(g.n_modes()));
  std::copy(g.values().begin(), g.values().end(), out.mutable_data());
  return out;
}

py::dict run_to_dict(const RunResult& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["t_final"] = r.t_final;
  d["steps"] = r.dt_history.size();
  d["blowup_time"] = r.blowup_time ? py::cast(*r.blowup_time) : py::none();
  d["diagnostic"] = r.diagnostic;
  std::istringstream header(kSeriesHeader);
  py::list columns;
  for (std::string col; std::getline(header, col, ',');) columns.append(col);
  d["columns"] = columns;
  py::array_t<double> series({static_cast<py::ssize_t>(r.series.size()), static_cast<py::ssize_t>(16)});
  auto acc = series.mutable_unchecked<2>();
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    const SeriesRow& s = r.series[i];
    const double row[16] = {s.t,          s.mass_m,     s.mass_n,  s.psi_bar,    s.b12_21_m,
                            s.b12_21_n,   s.hb0_inf1_m, s.hb0_inf1_n, s.hb0_inf2_m, s.hb0_inf2_n,
                            s.linf_m,     s.linf_n,     s.dt,      s.tail_ratio, s.blowup_integral_thm15,
                            s.blowup_integral_thm17};
    for (int c = 0; c < 16; ++c) acc(static_cast<py::ssize_t>(i), c) = row[c];
  }
  d["series"] = series;
  d["final_m"] = to_values(r.final_state.m);
  d["final_n"] = to_values(r.final_state.n);
  return d;
}

}  // namespace

PYBIND11_MODULE(_chsys, mod) {
  mod.doc() = "Bindings of the chsys C++ core";
  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidField>(mod, "InvalidField", PyExc_ValueError);
  py::register_exception<ShapeError>(mod, "ShapeError", PyExc_ValueError);

  mod.def("to_spectral", [](const Array& a) {
    const SpectralField f = from_values(a);
    return std::vector<Complex>(f.half().begin(), f.half().end());
  }, py::arg("values"), "Half spectrum coeff(0..N/2) of grid samples at x_j = j/N.");
  mod.def("derivative", [](const Array& a) { return to_values(derivative(from_values(a))); }, py::arg("values"));
  mod.def("antiderivative_zero_mean", [](const Array& a) { return to_values(antiderivative_zero_mean(from_values(a))); },
          py::arg("values"));
  mod.def("helmholtz_inverse", [](const Array& a) { return to_values(helmholtz_inverse(from_values(a))); },
          py::arg("values"));
  mod.def("dealiased_product",
          [](const Array& f, const Array& g, bool dealias) {
            return to_values(dealiased_product(from_values(f), from_values(g), dealias));
          },
          py::arg("f"), py::arg("g"), py::arg("dealias") = true);
  mod.def("besov_norm",
          [](const Array& a, double s, const std::string& p, const std::string& r, bool homogeneous,
             const std::string& filter) {
            const SpectralField f = from_values(a);
            const DyadicFilterBank bank = build_filters(f.n_modes(), filter_kind_from_string(filter));
            return besov_norm(f, {s, integrability_from_string(p), summability_from_string(r), homogeneous}, bank);
          },
          py::arg("values"), py::arg("s"), py::arg("p") = "2", py::arg("r") = "1", py::arg("homogeneous") = false,
          py::arg("filter") = "smooth");

  mod.def("hbar", &hbar, py::arg("x"), py::arg("A"), py::arg("C") = 1.0);
  mod.def("lifespan_level", &lifespan_level, py::arg("F0"), py::arg("C") = 1.0);
  mod.def("global_sufficient_condition", &global_sufficient_condition, py::arg("F0"), py::arg("C") = 1.0);
  mod.def("uniform_bound", &uniform_bound, py::arg("F0"), py::arg("A"), py::arg("C") = 1.0);
  mod.def("lambda_threshold", py::overload_cast<double, double>(&lambda_threshold), py::arg("F"), py::arg("C") = 1.0);

  mod.def("simulate", [](const std::string& config_json) {
    const RunConfig cfg = parse_config(config_json);
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run(make_initial_state(cfg), cfg.model, cfg.integrator, cfg.monitor);
    }
    return run_to_dict(r);
  }, py::arg("config_json"), "Runs a configuration given as JSON text; nothing is written to disk.");
  mod.def("bounds_json", [](const std::string& config_json) {
    const RunConfig cfg = parse_config(config_json);
    const State s = make_initial_state(cfg);
    const DyadicFilterBank bank = build_filters(cfg.n_modes, cfg.integrator.filter);
    return bounds_to_json(evaluate_bounds(s.m, s.n, cfg.model.alpha, cfg.model.gamma, cfg.harness, bank)).dump();
  }, py::arg("config_json"));
  mod.def("normalized_config_json", [](const std::string& config_json) {
    return config_to_json(parse_config(config_json)).dump();
  }, py::arg("config_json"));
  mod.def("cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"chsys"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs one CLI subcommand; returns (exit_code, stdout, stderr).");
}
