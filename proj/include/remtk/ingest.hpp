#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace remtk {

/// One timestamped, geolocated received-power sample for one frequency.
struct Measurement {
  double timestamp_s = 0.0;   // seconds since epoch, UTC
  std::string site_id;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double freq_mhz = 0.0;
  double power_dbm = 0.0;
};

/// Throws ValidationError naming the violated invariant.
void validate_measurement(const Measurement& m);

/// Uniform channelization: channel k spans
/// [start_mhz + k*width, start_mhz + (k+1)*width). Upper band edge exclusive.
struct ChannelGrid {
  double start_mhz = 470.0;
  double channel_width_mhz = 6.0;
  int n_channels = 23;

  double upper_mhz() const { return start_mhz + channel_width_mhz * n_channels; }
};

/// Index of the channel containing freq_mhz. Throws ValidationError if the
/// frequency falls outside [start, start + n*width); never clamps.
int channel_index(double freq_mhz, const ChannelGrid& grid);

/// Axis-aligned affine map degrees -> [-1,1]^2. No map projection.
struct CoordFrame {
  double lat0_deg = 0.0;  // box center
  double lon0_deg = 0.0;
  double scale_x = 1.0;   // x = (lon - lon0) * scale_x
  double scale_y = 1.0;   // y = (lat - lat0) * scale_y

  void normalize(double lat_deg, double lon_deg, double& x, double& y) const {
    x = (lon_deg - lon0_deg) * scale_x;
    y = (lat_deg - lat0_deg) * scale_y;
  }
  void denormalize(double x, double y, double& lat_deg, double& lon_deg) const {
    lon_deg = lon0_deg + x / scale_x;
    lat_deg = lat0_deg + y / scale_y;
  }
};

/// Fits the bounding box of the measurement locations to [-1,1]^2.
/// Throws InsufficientDataError if fewer than 2 records, ValidationError if all
/// points are co-located (degenerate frame).
CoordFrame fit_frame(const std::vector<Measurement>& measurements);

/// Parses a header-bearing comma-delimited stream. '#'-prefixed lines are
/// ignored. Throws ValidationError naming the line number and column on any
/// malformed row or invariant violation.
std::vector<Measurement> parse_measurements(const std::string& text);

/// Renders records back to the canonical delimited format, numeric fields at
/// 9 significant digits. Output starts with the canonical header line.
std::string serialize_measurements(const std::vector<Measurement>& measurements);

}  // namespace remtk
