#include "chsys/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace chsys {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kSeriesColumns = 16;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

double parse_double(const std::string& token, const fs::path& path, std::size_t line) {
  char* end = nullptr;
  const double x = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": malformed number '" + token + "'");
  }
  return x;
}

std::array<double SeriesRow::*, kSeriesColumns> series_columns() {
  return {&SeriesRow::t,         &SeriesRow::mass_m,     &SeriesRow::mass_n,     &SeriesRow::psi_bar,
          &SeriesRow::b12_21_m,  &SeriesRow::b12_21_n,   &SeriesRow::hb0_inf1_m, &SeriesRow::hb0_inf1_n,
          &SeriesRow::hb0_inf2_m, &SeriesRow::hb0_inf2_n, &SeriesRow::linf_m,     &SeriesRow::linf_n,
          &SeriesRow::dt,        &SeriesRow::tail_ratio, &SeriesRow::blowup_integral_thm15,
          &SeriesRow::blowup_integral_thm17};
}

}  // namespace

const char* const kSeriesHeader =
    "t,mass_m,mass_n,psi_bar,B12_21_m,B12_21_n,hB0_inf1_m,hB0_inf1_n,hB0_inf2_m,hB0_inf2_n,Linf_m,Linf_n,dt,"
    "tail_ratio,blowup_integral_thm15,blowup_integral_thm17";

void write_series(const TimeSeries& ts, const fs::path& path) {
  auto out = open_out(path);
  out << kSeriesHeader << '\n';
  const auto cols = series_columns();
  for (const SeriesRow& row : ts) {
    for (std::size_t c = 0; c < kSeriesColumns; ++c) {
      if (c) out << ',';
      out << fmt17(row.*cols[c]);
    }
    out << '\n';
  }
  close_checked(out, path);
}

TimeSeries read_series(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) throw IoError(path.string() + ": unexpected series header");
  const auto cols = series_columns();
  TimeSeries ts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string token;
    SeriesRow row;
    std::size_t c = 0;
    while (std::getline(ss, token, ',')) {
      if (c >= kSeriesColumns) throw IoError(path.string() + ":" + std::to_string(lineno) + ": too many columns");
      row.*cols[c++] = parse_double(token, path, lineno);
    }
    if (c != kSeriesColumns) throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 16 columns");
    ts.push_back(row);
  }
  return ts;
}

void write_snapshot(const Snapshot& snap, const fs::path& path) {
  std::ostringstream out;
  out << "# chsys spectral snapshot\n";
  out << "n_modes " << snap.state.n_modes() << '\n';
  out << "step " << snap.step << '\n';
  out << "t " << fmt17(snap.t) << '\n';
  out << "drift " << fmt17(snap.state.drift) << '\n';
  for (const auto& [name, field] : {std::pair{"m", &snap.state.m}, std::pair{"n", &snap.state.n}}) {
    const auto half = field->half();
    for (std::size_t k = 0; k < half.size(); ++k) {
      out << name << ' ' << k << ' ' << fmt17(half[k].real()) << ' ' << fmt17(half[k].imag()) << '\n';
    }
  }
  write_text_atomic(path, out.str());
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::string line;
  std::size_t lineno = 0;
  std::size_t n_modes = 0;
  Snapshot snap;
  std::vector<Complex> m, n;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    auto bad = [&] { return IoError(path.string() + ":" + std::to_string(lineno) + ": malformed line"); };
    if (key == "n_modes") {
      if (!(ss >> n_modes)) throw bad();
    } else if (key == "step") {
      if (!(ss >> snap.step)) throw bad();
    } else if (key == "t" || key == "drift") {
      std::string tok;
      if (!(ss >> tok)) throw bad();
      (key == "t" ? snap.t : snap.state.drift) = parse_double(tok, path, lineno);
    } else if (key == "m" || key == "n") {
      std::size_t k = 0;
      std::string re, im;
      if (!(ss >> k >> re >> im)) throw bad();
      auto& dst = key == "m" ? m : n;
      if (k != dst.size()) throw IoError(path.string() + ":" + std::to_string(lineno) + ": wavenumbers out of order");
      dst.emplace_back(parse_double(re, path, lineno), parse_double(im, path, lineno));
    } else {
      throw bad();
    }
  }
  if (n_modes == 0 || m.size() != n_modes / 2 + 1 || n.size() != n_modes / 2 + 1) {
    throw IoError(path.string() + ": incomplete snapshot");
  }
  const double drift = snap.state.drift;
  snap.state = State(SpectralField(n_modes, std::move(m)), SpectralField(n_modes, std::move(n)), drift);
  return snap;
}

void write_snapshot_grid(const Snapshot& snap, const fs::path& path) {
  const GridField gm = to_grid(snap.state.m);
  const GridField gn = to_grid(snap.state.n);
  std::ostringstream out;
  out << "x,m,n\n";
  for (std::size_t j = 0; j < gm.n_modes(); ++j) out << fmt17(gm.x(j)) << ',' << fmt17(gm[j]) << ',' << fmt17(gn[j]) << '\n';
  write_text_atomic(path, out.str());
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    auto out = open_out(tmp);
    out << text;
    close_checked(out, tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError(path.string() + ": " + ec.message());
}

nlohmann::json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

nlohmann::json bounds_to_json(const BoundsReport& b) {
  nlohmann::json j = {
      {"F0", json_number(b.F0)},
      {"G0", json_number(b.G0)},
      {"C", json_number(b.C)},
      {"A_infinity", json_number(b.A_infinity)},
      {"K_threshold", json_number(b.K_threshold)},
      {"T_local", json_number(b.T_local)},
      {"A_at_T_local", json_number(b.A_at_T_local)},
      {"hbar_at_F0", json_number(b.hbar_at_F0)},
      {"uniform_bound", json_number(b.uniform_bound)},
      {"global_threshold", json_number(b.global_threshold)},
      {"global_condition_satisfied", b.global_condition_satisfied},
      {"T_star_lower_critical", json_number(b.T_star_lower_critical)},
      {"T_prime_lower_noncritical", json_number(b.T_prime_lower_noncritical)},
  };
  j["lambda_threshold_forq"] = b.lambda_threshold_forq ? json_number(*b.lambda_threshold_forq) : nullptr;
  j["lambda_threshold_sqq"] = b.lambda_threshold_sqq ? json_number(*b.lambda_threshold_sqq) : nullptr;
  return j;
}

nlohmann::json friedrichs_to_json(const FriedrichsResult& r) {
  nlohmann::json iterates = nlohmann::json::array();
  for (std::size_t i = 0; i < r.iterates.size(); ++i) {
    nlohmann::json it = {{"k", r.iterates[i].k}, {"F_sup", json_number(r.iterates[i].f_sup)}};
    it["D_sup"] = i < r.d_sup.size() ? json_number(r.d_sup[i]) : nullptr;
    iterates.push_back(std::move(it));
  }
  nlohmann::json j = {{"t_end", r.times.empty() ? 0.0 : r.times.back()}, {"steps", r.times.empty() ? 0 : r.times.size() - 1},
                      {"iterates", iterates}};
  j["halted_at"] = r.halted_at ? nlohmann::json(*r.halted_at) : nullptr;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

}  // namespace chsys
