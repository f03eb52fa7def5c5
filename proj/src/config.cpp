#include "chsys/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace chsys {
namespace {

using nlohmann::json;

std::string join_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

// Typed access to one JSON object that records every key it consumed.
class Section {
 public:
  Section(const json* node, std::string path, std::vector<std::string>& errors)
      : node_(node), path_(std::move(path)), errors_(&errors) {
    if (node_ && !node_->is_object()) {
      fail("", "expected an object");
      node_ = nullptr;
    }
  }

  bool present() const { return node_ != nullptr; }
  const std::string& path() const { return path_; }

  void fail(const std::string& key, const std::string& message) const {
    errors_->push_back((key.empty() ? path_ : join_path(path_, key)) + ": " + message);
  }

  const json* raw(const std::string& key, bool required) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) {
      if (required) fail(key, "missing required field");
      return nullptr;
    }
    return &node_->at(key);
  }

  std::optional<double> number(const std::string& key, bool required = false) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(key, "expected a number");
      return std::nullopt;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      fail(key, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::uint64_t> integer(const std::string& key, bool required = false) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned()) {
      fail(key, "expected a nonnegative integer");
      return std::nullopt;
    }
    return v->get<std::uint64_t>();
  }

  std::optional<bool> boolean(const std::string& key, bool required = false) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      fail(key, "expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::string& key, bool required = false) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(key, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  Section child(const std::string& key, bool required = false) {
    return Section(raw(key, required), join_path(path_, key), *errors_);
  }

  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!seen_.count(key)) fail(key, "unknown key");
    }
  }

 private:
  const json* node_;
  std::string path_;
  std::vector<std::string>* errors_;
  std::set<std::string> seen_;
};

std::optional<CoefficientSchedule> parse_schedule(const json* node, const std::string& path,
                                                  std::vector<std::string>& errors) {
  if (node->is_number()) {
    const double v = node->get<double>();
    if (!std::isfinite(v)) {
      errors.push_back(path + ": must be finite");
      return std::nullopt;
    }
    return CoefficientSchedule::constant(v);
  }
  Section sec(node, path, errors);
  if (!sec.present()) return std::nullopt;
  const auto type = sec.string("type", true);
  std::optional<CoefficientSchedule> out;
  const std::size_t before = errors.size();
  try {
    if (!type) {
    } else if (*type == "zero") {
      out = CoefficientSchedule::zero();
    } else if (*type == "constant") {
      if (auto v = sec.number("value", true)) out = CoefficientSchedule::constant(*v);
    } else if (*type == "exp_decay") {
      const auto amp = sec.number("amplitude", true);
      const auto rate = sec.number("rate", true);
      if (rate && !(*rate > 0.0)) sec.fail("rate", "must be > 0");
      if (amp && rate && errors.size() == before) out = CoefficientSchedule::exp_decay(*amp, *rate);
    } else if (*type == "table") {
      const json* pts = sec.raw("points", true);
      std::vector<std::pair<double, double>> points;
      bool ok = pts != nullptr;
      if (pts && !pts->is_array()) {
        sec.fail("points", "expected an array of [t, value] pairs");
        ok = false;
      } else if (pts) {
        for (std::size_t i = 0; i < pts->size(); ++i) {
          const json& p = (*pts)[i];
          if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            sec.fail("points[" + std::to_string(i) + "]", "expected [t, value]");
            ok = false;
            continue;
          }
          points.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
      }
      if (ok) out = CoefficientSchedule::table(std::move(points));
    } else {
      sec.fail("type", "unknown schedule type '" + *type + "' (expected zero|constant|exp_decay|table)");
    }
  } catch (const ConfigError& e) {
    errors.push_back(path + ": " + e.what());
    out.reset();
  }
  sec.finish();
  return out;
}

std::optional<InitialSpec> parse_initial(Section sec, std::vector<std::string>& errors) {
  if (!sec.present()) return std::nullopt;
  const auto type = sec.string("type", true);
  std::optional<InitialSpec> out;
  if (!type) {
  } else if (*type == "cosine") {
    Cosine c;
    if (auto k = sec.number("wavenumber")) {
      if (*k != std::floor(*k)) sec.fail("wavenumber", "expected an integer");
      c.wavenumber = static_cast<long>(*k);
    }
    if (auto a = sec.number("amplitude")) c.amplitude = *a;
    if (auto o = sec.number("offset")) c.offset = *o;
    out = c;
  } else if (*type == "fourier_modes") {
    FourierModes fm;
    const json* modes = sec.raw("modes", true);
    if (modes && !modes->is_array()) {
      sec.fail("modes", "expected an array of [wavenumber, amplitude, phase]");
    } else if (modes) {
      for (std::size_t i = 0; i < modes->size(); ++i) {
        const json& e = (*modes)[i];
        const bool shape = e.is_array() && (e.size() == 2 || e.size() == 3) &&
                           std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_number(); });
        if (!shape || e[0].get<double>() != std::floor(e[0].get<double>())) {
          sec.fail("modes[" + std::to_string(i) + "]", "expected [integer wavenumber, amplitude, phase]");
          continue;
        }
        fm.modes.push_back({e[0].get<long>(), e[1].get<double>(), e.size() == 3 ? e[2].get<double>() : 0.0});
      }
    }
    out = fm;
  } else if (*type == "gaussian_bump") {
    GaussianBump g;
    if (auto c = sec.number("center")) g.center = *c;
    if (auto w = sec.number("width", true)) {
      if (!(*w > 0.0)) sec.fail("width", "must be > 0");
      g.width = *w;
    }
    if (auto a = sec.number("amplitude")) g.amplitude = *a;
    out = g;
  } else if (*type == "random_band_limited") {
    RandomBandLimited r;
    if (auto k = sec.integer("max_mode", true)) r.max_mode = *k;
    if (auto a = sec.number("amplitude")) r.amplitude = *a;
    if (auto s = sec.integer("seed", true)) r.seed = *s;
    out = r;
  } else {
    sec.fail("type", "unknown initial type '" + *type +
                         "' (expected cosine|fourier_modes|gaussian_bump|random_band_limited)");
  }
  sec.finish();
  (void)errors;
  return out;
}

std::optional<Summability> parse_summability(const json* v, Section& sec, const std::string& key) {
  if (!v) return std::nullopt;
  if (v->is_number_integer()) {
    const auto r = v->get<long>();
    if (r == 1) return Summability::one;
    if (r == 2) return Summability::two;
  } else if (v->is_string()) {
    try {
      return summability_from_string(v->get<std::string>());
    } catch (const std::exception&) {
    }
  }
  sec.fail(key, "expected 1, 2 or \"inf\"");
  return std::nullopt;
}

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<std::string> errors)
    : ConfigError(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigValidationError({std::string("<document>: malformed JSON: ") + e.what()});
  }
  std::vector<std::string> errors;
  RunConfig cfg;
  Section root(&doc, "", errors);
  if (!root.present()) throw ConfigValidationError(errors);

  {
    Section grid = root.child("grid", true);
    if (auto n = grid.integer("n_modes", grid.present())) {
      if (*n < 32 || *n % 2 != 0) grid.fail("n_modes", "must be an even integer >= 32");
      cfg.n_modes = *n;
    }
    grid.finish();
  }
  {
    Section time = root.child("time", true);
    IntegratorConfig& ic = cfg.integrator;
    if (auto t = time.number("t_end", time.present())) {
      if (!(*t > 0.0)) time.fail("t_end", "must be > 0");
      ic.t_end = *t;
    }
    if (auto c = time.number("cfl")) {
      if (!(*c > 0.0 && *c <= 1.0)) time.fail("cfl", "must lie in (0, 1]");
      ic.cfl = *c;
    }
    if (auto d = time.number("dt_max")) {
      if (!(*d > 0.0)) time.fail("dt_max", "must be > 0");
      ic.dt_max = *d;
    }
    if (auto d = time.number("dt_min")) {
      if (!(*d > 0.0)) time.fail("dt_min", "must be > 0");
      ic.dt_min = *d;
    }
    if (!(ic.dt_min < ic.dt_max)) time.fail("dt_min", "must be smaller than time.dt_max");
    if (auto k = time.integer("series_every")) {
      if (*k == 0) time.fail("series_every", "must be >= 1");
      ic.series_every = *k;
    }
    if (auto k = time.integer("snapshot_every")) ic.snapshot_every = *k;
    if (auto d = time.boolean("dealias")) ic.dealias = *d;
    time.finish();
  }
  {
    Section model = root.child("model");
    if (auto f = model.string("form")) {
      try {
        cfg.model.form = model_form_from_string(*f);
      } catch (const ConfigError&) {
        model.fail("form", "unknown form '" + *f + "' (expected nonlocal|damped_forq|damped_sqq)");
      }
    }
    const bool damped = cfg.model.form != ModelForm::nonlocal;
    if (auto l = model.number("lambda", damped)) {
      if (!damped) model.fail("lambda", "only valid for damped_forq or damped_sqq");
      if (!(*l >= 0.0)) model.fail("lambda", "must be >= 0");
      cfg.model.lambda = *l;
    }
    if (auto t = model.string("transport")) {
      if (*t == "divergence") {
        cfg.model.transport = TransportForm::divergence;
      } else if (*t == "advective") {
        cfg.model.transport = TransportForm::advective;
      } else {
        model.fail("transport", "expected divergence or advective");
      }
    }
    model.finish();
  }
  {
    Section coeffs = root.child("coefficients");
    for (const char* key : {"alpha", "gamma"}) {
      if (const json* node = coeffs.raw(key, false)) {
        if (auto s = parse_schedule(node, join_path(coeffs.path(), key), errors)) {
          (std::string(key) == "alpha" ? cfg.model.alpha : cfg.model.gamma) = std::move(*s);
        }
      }
    }
    coeffs.finish();
  }
  {
    Section initial = root.child("initial", true);
    auto m = parse_initial(initial.child("m", initial.present()), errors);
    auto n = parse_initial(initial.child("n", initial.present()), errors);
    if (m) cfg.m_spec = *m;
    if (n) cfg.n_spec = *n;
    initial.finish();
    if (m && n && cfg.n_modes >= 32 && cfg.n_modes % 2 == 0) {
      try {
        const State s = make_initial_state(cfg);
        if (cfg.model.form == ModelForm::damped_forq && !(s.m == s.n)) {
          initial.fail("n", "damped_forq requires initial.n identical to initial.m");
        }
      } catch (const ConfigError& e) {
        initial.fail("", e.what());
      }
    }
  }
  {
    Section lp = root.child("lp");
    if (auto f = lp.string("filter")) {
      try {
        cfg.integrator.filter = filter_kind_from_string(*f);
      } catch (const std::exception&) {
        lp.fail("filter", "expected smooth or sharp");
      }
    }
    lp.finish();
  }
  {
    Section h = root.child("harness");
    HarnessSettings& hs = cfg.harness;
    if (auto c = h.number("constant_C")) {
      if (!(*c > 0.0)) h.fail("constant_C", "must be > 0");
      hs.C = *c;
    }
    if (auto e = h.number("epsilon")) {
      if (!(*e > 0.0 && *e < 0.5)) h.fail("epsilon", "must lie in (0, 1/2)");
      hs.epsilon = *e;
    }
    if (auto r = parse_summability(h.raw("r", false), h, "r")) hs.r = *r;
    Section ov = h.child("overrides");
    const std::pair<const char*, std::optional<double>*> slots[] = {
        {"lifespan", &hs.C_lifespan}, {"critical", &hs.C_critical},
        {"noncritical", &hs.C_noncritical}, {"lambda", &hs.C_lambda}};
    for (auto [key, slot] : slots) {
      if (auto c = ov.number(key)) {
        if (!(*c > 0.0)) ov.fail(key, "must be > 0");
        *slot = *c;
      }
    }
    ov.finish();
    h.finish();
  }
  {
    Section mon = root.child("monitor");
    if (auto v = mon.number("linf_threshold")) {
      if (!(*v > 0.0)) mon.fail("linf_threshold", "must be > 0");
      cfg.monitor.linf_threshold = *v;
    }
    if (auto v = mon.number("tail_ratio_threshold")) {
      if (!(*v > 0.0 && *v <= 1.0)) mon.fail("tail_ratio_threshold", "must lie in (0, 1]");
      cfg.monitor.tail_ratio_threshold = *v;
    }
    mon.finish();
  }
  {
    Section out = root.child("output");
    if (auto d = out.string("directory")) {
      if (d->empty()) out.fail("directory", "must not be empty");
      cfg.output_directory = *d;
    } else {
      const char* env = std::getenv(kOutputRootEnv);
      cfg.output_directory = std::string(env && *env ? env : ".") + "/run";
    }
    out.finish();
  }
  root.finish();

  if (!errors.empty()) throw ConfigValidationError(std::move(errors));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigValidationError({path + ": cannot open configuration file"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::json schedule_to_json(const CoefficientSchedule& s) {
  using S = CoefficientSchedule;
  const auto& v = s.variant();
  if (std::holds_alternative<S::Zero>(v)) return {{"type", "zero"}};
  if (const auto* c = std::get_if<S::Constant>(&v)) return {{"type", "constant"}, {"value", c->value}};
  if (const auto* e = std::get_if<S::ExpDecay>(&v)) {
    return {{"type", "exp_decay"}, {"amplitude", e->amplitude}, {"rate", e->rate}};
  }
  json pts = json::array();
  for (const auto& [t, val] : std::get<S::Table>(v).points) pts.push_back({t, val});
  return {{"type", "table"}, {"points", pts}};
}

nlohmann::json initial_to_json(const InitialSpec& s) {
  if (const auto* c = std::get_if<Cosine>(&s)) {
    return {{"type", "cosine"}, {"wavenumber", c->wavenumber}, {"amplitude", c->amplitude}, {"offset", c->offset}};
  }
  if (const auto* f = std::get_if<FourierModes>(&s)) {
    json modes = json::array();
    for (const auto& m : f->modes) modes.push_back({m.wavenumber, m.amplitude, m.phase});
    return {{"type", "fourier_modes"}, {"modes", modes}};
  }
  if (const auto* g = std::get_if<GaussianBump>(&s)) {
    return {{"type", "gaussian_bump"}, {"center", g->center}, {"width", g->width}, {"amplitude", g->amplitude}};
  }
  const auto& r = std::get<RandomBandLimited>(s);
  return {{"type", "random_band_limited"}, {"max_mode", r.max_mode}, {"amplitude", r.amplitude}, {"seed", r.seed}};
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  const IntegratorConfig& ic = cfg.integrator;
  json model = {{"form", to_string(cfg.model.form)},
                {"transport", cfg.model.transport == TransportForm::divergence ? "divergence" : "advective"}};
  if (cfg.model.form != ModelForm::nonlocal) model["lambda"] = cfg.model.lambda;
  json overrides = json::object();
  const HarnessSettings& h = cfg.harness;
  if (h.C_lifespan) overrides["lifespan"] = *h.C_lifespan;
  if (h.C_critical) overrides["critical"] = *h.C_critical;
  if (h.C_noncritical) overrides["noncritical"] = *h.C_noncritical;
  if (h.C_lambda) overrides["lambda"] = *h.C_lambda;
  json r = h.r == Summability::one ? json(1) : h.r == Summability::two ? json(2) : json("inf");
  return {
      {"grid", {{"n_modes", cfg.n_modes}}},
      {"time",
       {{"t_end", ic.t_end},
        {"cfl", ic.cfl},
        {"dt_max", ic.dt_max},
        {"dt_min", ic.dt_min},
        {"series_every", ic.series_every},
        {"snapshot_every", ic.snapshot_every},
        {"dealias", ic.dealias}}},
      {"model", model},
      {"coefficients", {{"alpha", schedule_to_json(cfg.model.alpha)}, {"gamma", schedule_to_json(cfg.model.gamma)}}},
      {"initial", {{"m", initial_to_json(cfg.m_spec)}, {"n", initial_to_json(cfg.n_spec)}}},
      {"lp", {{"filter", to_string(ic.filter)}}},
      {"harness", {{"constant_C", h.C}, {"epsilon", h.epsilon}, {"r", r}, {"overrides", overrides}}},
      {"monitor",
       {{"linf_threshold", cfg.monitor.linf_threshold},
        {"tail_ratio_threshold", cfg.monitor.tail_ratio_threshold}}},
      {"output", {{"directory", cfg.output_directory}}},
  };
}

State make_initial_state(const RunConfig& cfg) {
  return State(make_field(cfg.m_spec, cfg.n_modes), make_field(cfg.n_spec, cfg.n_modes));
}

}  // namespace chsys
