#include "remtk/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "remtk/errors.hpp"

namespace remtk {

namespace {

struct SlotChannelFlags {
  std::vector<std::uint8_t> sampled;   // per channel
  std::vector<std::uint8_t> occupied;
};

std::int64_t slot_of(double timestamp_s, double slot_s) {
  return static_cast<std::int64_t>(std::floor(timestamp_s / slot_s));
}

double min_timestamp(const std::vector<Measurement>& ms) {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& m : ms) t = std::min(t, m.timestamp_s);
  return t;
}

double max_timestamp(const std::vector<Measurement>& ms) {
  double t = -std::numeric_limits<double>::infinity();
  for (const auto& m : ms) t = std::max(t, m.timestamp_s);
  return t;
}

/// Per-slot channel flags for samples in [t0, t0 + window_s).
std::map<std::int64_t, SlotChannelFlags> scan(const std::vector<Measurement>& ms,
                                              const ChannelGrid& grid,
                                              const OccupancyConfig& cfg,
                                              double t0) {
  std::map<std::int64_t, SlotChannelFlags> slots;
  const std::size_t nc = static_cast<std::size_t>(grid.n_channels);
  for (const auto& m : ms) {
    if (m.timestamp_s < t0 || m.timestamp_s >= t0 + cfg.window_s) continue;
    int ch = channel_index(m.freq_mhz, grid);
    auto& flags = slots[slot_of(m.timestamp_s, cfg.slot_s)];
    if (flags.sampled.empty()) {
      flags.sampled.assign(nc, 0);
      flags.occupied.assign(nc, 0);
    }
    flags.sampled[ch] = 1;
    if (is_occupied(m.power_dbm, cfg.threshold_dbm)) flags.occupied[ch] = 1;
  }
  return slots;
}

}  // namespace

std::vector<SlotFraction> slot_occupancy(const std::vector<Measurement>& measurements,
                                         const ChannelGrid& grid,
                                         const OccupancyConfig& config) {
  std::vector<SlotFraction> out;
  if (measurements.empty()) return out;
  auto slots = scan(measurements, grid, config, min_timestamp(measurements));
  for (const auto& [slot, flags] : slots) {
    std::size_t sampled = 0, occupied = 0;
    for (std::size_t c = 0; c < flags.sampled.size(); ++c) {
      sampled += flags.sampled[c];
      occupied += flags.occupied[c];
    }
    if (sampled == 0) continue;
    out.push_back({slot, static_cast<double>(occupied) / static_cast<double>(sampled)});
  }
  return out;
}

BandSummary band_summary(const std::vector<Measurement>& measurements,
                         const std::string& band_name,
                         double span_lo_mhz, double span_hi_mhz,
                         const OccupancyConfig& config) {
  BandSummary s;
  s.band_name = band_name;
  s.span_lo_mhz = span_lo_mhz;
  s.span_hi_mhz = span_hi_mhz;
  if (!(span_hi_mhz > span_lo_mhz))
    throw ValidationError("band span must satisfy hi > lo");

  std::vector<Measurement> in_band;
  for (const auto& m : measurements)
    if (m.freq_mhz >= span_lo_mhz && m.freq_mhz < span_hi_mhz) in_band.push_back(m);

  ChannelGrid band_grid;
  band_grid.start_mhz = span_lo_mhz;
  band_grid.channel_width_mhz = ChannelGrid{}.channel_width_mhz;
  band_grid.n_channels = std::max(
      1, static_cast<int>(std::ceil((span_hi_mhz - span_lo_mhz) / band_grid.channel_width_mhz)));

  auto fractions = slot_occupancy(in_band, band_grid, config);
  s.n_slots = fractions.size();
  if (fractions.empty()) {
    s.has_data = false;
    return s;
  }
  s.has_data = true;
  double sum = 0.0;
  std::vector<double> vals;
  vals.reserve(fractions.size());
  for (const auto& f : fractions) {
    sum += f.fraction;
    vals.push_back(f.fraction);
  }
  s.avg_occupancy = sum / static_cast<double>(vals.size());
  std::sort(vals.begin(), vals.end());
  // nearest-rank: ceil(0.95 * n)-th order statistic, 1-based
  std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(vals.size())));
  rank = std::clamp<std::size_t>(rank, 1, vals.size());
  s.p95_occupancy = vals[rank - 1];
  return s;
}

AvailabilityMatrix availability_matrix(const std::vector<Measurement>& measurements,
                                       const ChannelGrid& grid,
                                       const OccupancyConfig& config) {
  if (measurements.empty())
    throw InsufficientDataError("availability_matrix: no measurements");
  const double t0 = min_timestamp(measurements);
  const double t1 = max_timestamp(measurements);
  auto slots = scan(measurements, grid, config, t0);

  AvailabilityMatrix m;
  m.grid = grid;
  m.two_site = false;
  m.slot0 = slot_of(t0, config.slot_s);
  const std::int64_t last =
      slot_of(std::min(t1, t0 + config.window_s - 1e-9), config.slot_s);
  m.n_slots = static_cast<std::size_t>(last - m.slot0 + 1);
  m.state.assign(static_cast<std::size_t>(grid.n_channels) * m.n_slots, CellState::FREE_BOTH);

  for (int c = 0; c < grid.n_channels; ++c) {
    for (std::size_t s = 0; s < m.n_slots; ++s) {
      auto it = slots.find(m.slot0 + static_cast<std::int64_t>(s));
      const bool sampled = it != slots.end() && it->second.sampled[c];
      if (!sampled) {
        ++m.coverage_gaps;
        continue;
      }
      if (it->second.occupied[c])
        m.state[static_cast<std::size_t>(c) * m.n_slots + s] = CellState::OCCUPIED_BOTH;
    }
  }
  return m;
}

AvailabilityMatrix joint_availability(const std::vector<Measurement>& site_a,
                                      const std::vector<Measurement>& site_b,
                                      const ChannelGrid& grid,
                                      const OccupancyConfig& config) {
  if (site_a.empty() || site_b.empty())
    throw InsufficientDataError("joint_availability: both sites need measurements");
  const double a0 = min_timestamp(site_a), a1 = max_timestamp(site_a);
  const double b0 = min_timestamp(site_b), b1 = max_timestamp(site_b);
  if (a1 < b0 || b1 < a0)
    throw ValidationError("joint_availability: disjoint time windows, nothing to correlate");

  const double t0 = std::min(a0, b0);
  const double t1 = std::max(a1, b1);
  auto slots_a = scan(site_a, grid, config, t0);
  auto slots_b = scan(site_b, grid, config, t0);

  AvailabilityMatrix m;
  m.grid = grid;
  m.two_site = true;
  m.slot0 = slot_of(t0, config.slot_s);
  const std::int64_t last =
      slot_of(std::min(t1, t0 + config.window_s - 1e-9), config.slot_s);
  m.n_slots = static_cast<std::size_t>(last - m.slot0 + 1);
  m.state.assign(static_cast<std::size_t>(grid.n_channels) * m.n_slots, CellState::FREE_BOTH);

  auto cell = [&](const std::map<std::int64_t, SlotChannelFlags>& slots, int c,
                  std::int64_t slot, bool& occupied) {
    auto it = slots.find(slot);
    const bool sampled = it != slots.end() && it->second.sampled[c];
    occupied = sampled && it->second.occupied[c];
    return sampled;
  };

  for (int c = 0; c < grid.n_channels; ++c) {
    for (std::size_t s = 0; s < m.n_slots; ++s) {
      const std::int64_t slot = m.slot0 + static_cast<std::int64_t>(s);
      bool occ_a = false, occ_b = false;
      if (!cell(slots_a, c, slot, occ_a)) ++m.coverage_gaps;
      if (!cell(slots_b, c, slot, occ_b)) ++m.coverage_gaps;
      CellState st = CellState::FREE_ONE;
      if (occ_a && occ_b) st = CellState::OCCUPIED_BOTH;
      else if (!occ_a && !occ_b) st = CellState::FREE_BOTH;
      m.state[static_cast<std::size_t>(c) * m.n_slots + s] = st;
    }
  }
  return m;
}

std::string availability_csv(const AvailabilityMatrix& matrix) {
  std::string out;
  for (int c = 0; c < matrix.grid.n_channels; ++c) {
    for (std::size_t s = 0; s < matrix.n_slots; ++s) {
      if (s) out += ',';
      out += static_cast<char>('0' + static_cast<int>(matrix.at(c, s)));
    }
    out += '\n';
  }
  return out;
}

}  // namespace remtk
