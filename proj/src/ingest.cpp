#include "remtk/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "remtk/errors.hpp"

namespace remtk {

namespace {

const char* kHeader = "timestamp_s,site_id,lat_deg,lon_deg,freq_mhz,power_dbm";

const char* kColumns[6] = {"timestamp_s", "site_id",  "lat_deg",
                           "lon_deg",     "freq_mhz", "power_dbm"};

double parse_number(const std::string& field, std::size_t line_no, int col) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != field.size() || field.empty() || !std::isfinite(v)) {
    throw ValidationError("line " + std::to_string(line_no) + ", column " +
                          kColumns[col] + ": malformed value '" + field + "'");
  }
  return v;
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void validate_measurement(const Measurement& m) {
  if (!(m.timestamp_s >= 0.0))
    throw ValidationError("timestamp_s must be >= 0, got " + fmt9(m.timestamp_s));
  if (!(m.lat_deg >= -90.0 && m.lat_deg <= 90.0))
    throw ValidationError("lat_deg must lie in [-90, 90], got " + fmt9(m.lat_deg));
  if (!(m.lon_deg >= -180.0 && m.lon_deg <= 180.0))
    throw ValidationError("lon_deg must lie in [-180, 180], got " + fmt9(m.lon_deg));
  if (!(m.freq_mhz > 0.0))
    throw ValidationError("freq_mhz must be > 0, got " + fmt9(m.freq_mhz));
  if (!(m.power_dbm >= -200.0 && m.power_dbm <= 50.0))
    throw ValidationError("power_dbm must lie in [-200, 50], got " + fmt9(m.power_dbm));
}

int channel_index(double freq_mhz, const ChannelGrid& grid) {
  if (freq_mhz < grid.start_mhz || freq_mhz >= grid.upper_mhz()) {
    throw ValidationError("frequency " + fmt9(freq_mhz) +
                          " MHz outside channel grid [" + fmt9(grid.start_mhz) +
                          ", " + fmt9(grid.upper_mhz()) + ")");
  }
  int k = static_cast<int>(std::floor((freq_mhz - grid.start_mhz) / grid.channel_width_mhz));
  return std::clamp(k, 0, grid.n_channels - 1);
}

CoordFrame fit_frame(const std::vector<Measurement>& measurements) {
  if (measurements.size() < 2)
    throw InsufficientDataError("fit_frame needs at least 2 records");
  double lat_min = std::numeric_limits<double>::infinity();
  double lat_max = -lat_min, lon_min = lat_min, lon_max = -lat_min;
  for (const auto& m : measurements) {
    lat_min = std::min(lat_min, m.lat_deg);
    lat_max = std::max(lat_max, m.lat_deg);
    lon_min = std::min(lon_min, m.lon_deg);
    lon_max = std::max(lon_max, m.lon_deg);
  }
  if (lat_max <= lat_min || lon_max <= lon_min)
    throw ValidationError("degenerate frame: measurement locations span zero extent");
  CoordFrame f;
  f.lat0_deg = 0.5 * (lat_min + lat_max);
  f.lon0_deg = 0.5 * (lon_min + lon_max);
  f.scale_x = 2.0 / (lon_max - lon_min);
  f.scale_y = 2.0 / (lat_max - lat_min);
  return f;
}

std::vector<Measurement> parse_measurements(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Measurement> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kHeader)
        throw ValidationError("line " + std::to_string(line_no) +
                              ": expected header '" + kHeader + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6)
      throw ValidationError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                            std::to_string(fields.size()));
    Measurement m;
    m.timestamp_s = parse_number(fields[0], line_no, 0);
    m.site_id = fields[1];
    m.lat_deg = parse_number(fields[2], line_no, 2);
    m.lon_deg = parse_number(fields[3], line_no, 3);
    m.freq_mhz = parse_number(fields[4], line_no, 4);
    m.power_dbm = parse_number(fields[5], line_no, 5);
    try {
      validate_measurement(m);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(m));
  }
  if (!header_seen)
    throw ValidationError("missing header '" + std::string(kHeader) + "'");
  return out;
}

std::string serialize_measurements(const std::vector<Measurement>& measurements) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& m : measurements) {
    out += fmt9(m.timestamp_s);
    out += ',';
    out += m.site_id;
    out += ',';
    out += fmt9(m.lat_deg);
    out += ',';
    out += fmt9(m.lon_deg);
    out += ',';
    out += fmt9(m.freq_mhz);
    out += ',';
    out += fmt9(m.power_dbm);
    out += '\n';
  }
  return out;
}

}  // namespace remtk
