#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "remtk/ingest.hpp"

namespace remtk {

struct OccupancyConfig {
  double threshold_dbm = -108.0;  // observed noise floor -118 dBm + 10 dB margin
  double slot_s = 1.0;
  double window_s = 900.0;
};

/// Energy-detection decision rule: strictly above threshold is occupied.
inline bool is_occupied(double power_dbm, double threshold_dbm) {
  return power_dbm > threshold_dbm;
}

struct BandSummary {
  std::string band_name;
  double span_lo_mhz = 0.0;
  double span_hi_mhz = 0.0;
  double avg_occupancy = 0.0;
  double p95_occupancy = 0.0;
  std::size_t n_slots = 0;     // usable (sampled) slots
  bool has_data = false;
};

/// Occupancy fraction of one time slot: occupied (channel,slot) cells divided
/// by channels with at least one sample in that slot.
struct SlotFraction {
  std::int64_t slot = 0;  // absolute slot index, floor(timestamp_s / slot_s)
  double fraction = 0.0;
};

/// Per-slot occupancy fractions; slots with no samples are omitted.
/// All measurements must fall within the grid span (throws ValidationError
/// otherwise). Empty input yields an empty result.
std::vector<SlotFraction> slot_occupancy(const std::vector<Measurement>& measurements,
                                         const ChannelGrid& grid,
                                         const OccupancyConfig& config);

/// Avg = arithmetic mean of slot fractions, p95 = nearest-rank 95th percentile
/// (ceil(0.95 n)-th order statistic). Zero usable slots -> has_data = false.
BandSummary band_summary(const std::vector<Measurement>& measurements,
                         const std::string& band_name,
                         double span_lo_mhz, double span_hi_mhz,
                         const OccupancyConfig& config);

enum class CellState : std::uint8_t {
  FREE_BOTH = 0,      // single-site FREE uses this value too
  FREE_ONE = 1,
  OCCUPIED_BOTH = 2,  // single-site OCCUPIED uses this value too
};

struct AvailabilityMatrix {
  ChannelGrid grid;
  std::int64_t slot0 = 0;           // absolute index of the first slot
  std::size_t n_slots = 0;
  bool two_site = false;
  std::vector<CellState> state;     // row-major, [channel * n_slots + slot]
  std::size_t coverage_gaps = 0;    // (cell, site) pairs with no samples

  CellState at(int channel, std::size_t slot) const {
    return state[static_cast<std::size_t>(channel) * n_slots + slot];
  }
};

/// Single-site occupancy matrix over the sampled slot range.
AvailabilityMatrix availability_matrix(const std::vector<Measurement>& measurements,
                                       const ChannelGrid& grid,
                                       const OccupancyConfig& config);

/// Two-site joint matrix. Missing data at a site is treated as FREE at that
/// site and counted in coverage_gaps. Throws ValidationError if the two
/// streams cover disjoint time windows.
AvailabilityMatrix joint_availability(const std::vector<Measurement>& site_a,
                                      const std::vector<Measurement>& site_b,
                                      const ChannelGrid& grid,
                                      const OccupancyConfig& config);

/// Matrix CSV: one row per channel, one column per slot, cells {0,1,2}.
std::string availability_csv(const AvailabilityMatrix& matrix);

}  // namespace remtk
