#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "chsys/friedrichs.hpp"
#include "chsys/harness.hpp"
#include "chsys/integrator.hpp"
#include "json.hpp"

namespace chsys {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comma-separated header of the series file, in column order.
extern const char* const kSeriesHeader;

void write_series(const TimeSeries& ts, const std::filesystem::path& path);
TimeSeries read_series(const std::filesystem::path& path);

/// Spectral snapshot: a small header followed by "m|n wavenumber re im" lines
/// for n = 0..N/2 at 17 significant digits.
void write_snapshot(const Snapshot& snap, const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Grid rendering "x,m,n" of a snapshot for inspection.
void write_snapshot_grid(const Snapshot& snap, const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over path.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// JSON number, or the strings "+inf" / "-inf" / "nan" for non-finite values.
nlohmann::json json_number(double x);

nlohmann::json bounds_to_json(const BoundsReport& b);
nlohmann::json friedrichs_to_json(const FriedrichsResult& r);

}  // namespace chsys
