#include "remtk/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "remtk/errors.hpp"

namespace remtk {

namespace {

constexpr double kMinDistanceKm = 1e-9;

double to_km(double ax, double ay, double bx, double by, double km_per_unit) {
  return std::hypot(ax - bx, ay - by) * km_per_unit;
}

/// Distance at which a transmitter with the given EIRP is received at exactly
/// rx_dbm; closed form for both model kinds.
double solve_distance_km(const PathLossModel& model, double eirp_dbm, double rx_dbm,
                         double freq_mhz) {
  const double budget = eirp_dbm - rx_dbm;  // allowable path loss
  switch (model.kind) {
    case PathLossKind::free_space:
      return std::pow(10.0, (budget - 32.44 - 20.0 * std::log10(freq_mhz)) / 20.0);
    case PathLossKind::log_distance:
      return model.d0_km * std::pow(10.0, (budget - model.pl0_db) / (10.0 * model.exponent));
  }
  return 0.0;
}

}  // namespace

double path_loss_db(const PathLossModel& model, double distance_km, double freq_mhz) {
  if (!(distance_km > 0.0))
    throw ValidationError("path_loss_db: distance must be > 0 km");
  switch (model.kind) {
    case PathLossKind::free_space:
      if (!(freq_mhz > 0.0)) throw ValidationError("path_loss_db: frequency must be > 0");
      return 32.44 + 20.0 * std::log10(distance_km) + 20.0 * std::log10(freq_mhz);
    case PathLossKind::log_distance:
      return model.pl0_db + 10.0 * model.exponent * std::log10(distance_km / model.d0_km);
  }
  throw ValidationError("path_loss_db: unknown model kind");
}

RadiusResult coverage_radius_km(const TransmitterSpec& tx, const PathLossModel& model) {
  if (std::isinf(tx.eirp_dbm) && tx.eirp_dbm < 0.0) return {0.0, true};
  if (tx.eirp_dbm - tx.rx_sensitivity_dbm <= -200.0) return {0.0, false};
  return {solve_distance_km(model, tx.eirp_dbm, tx.rx_sensitivity_dbm, tx.freq_mhz), true};
}

RadiusResult protection_radius_km(const TransmitterSpec& pu, double su_eirp_dbm,
                                  const PathLossModel& model) {
  if (std::isinf(su_eirp_dbm) && su_eirp_dbm < 0.0) return {0.0, true};
  if (su_eirp_dbm - pu.interference_threshold_dbm <= -200.0) return {0.0, false};
  return {solve_distance_km(model, su_eirp_dbm, pu.interference_threshold_dbm, pu.freq_mhz),
          true};
}

std::string to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::NO_FREE_RUN: return "NO_FREE_RUN";
    case RejectReason::PU_PROTECTION: return "PU_PROTECTION";
    case RejectReason::SU_CONFLICT: return "SU_CONFLICT";
    case RejectReason::BANDWIDTH_EXCEEDS_GRID: return "BANDWIDTH_EXCEEDS_GRID";
  }
  return "NO_FREE_RUN";
}

std::vector<bool> free_channels_from_matrix(const AvailabilityMatrix& matrix) {
  std::vector<bool> free(static_cast<std::size_t>(matrix.grid.n_channels), true);
  for (int c = 0; c < matrix.grid.n_channels; ++c)
    for (std::size_t s = 0; s < matrix.n_slots; ++s)
      if (matrix.at(c, s) != CellState::FREE_BOTH) {
        free[static_cast<std::size_t>(c)] = false;
        break;
      }
  return free;
}

namespace {

struct Placed {
  Grant grant;
  double x, y;
  double freq_mhz;  // center of the granted run, used for range checks
};

bool runs_overlap(const Grant& a, int first, int n) {
  return a.first_channel < first + n && first < a.first_channel + a.n_channels;
}

/// Received power of a at b's location; co-located pairs count as in range.
bool in_range(const Placed& a, double bx, double by, double a_eirp, double threshold,
              const AllocConfig& cfg) {
  const double d = to_km(a.x, a.y, bx, by, cfg.km_per_unit);
  if (d < kMinDistanceKm) return true;
  return a_eirp - path_loss_db(cfg.model, d, a.freq_mhz) > threshold + 1e-9;
}

/// Max EIRP keeping every co-channel PU at or below its threshold; nullopt if
/// some PU is co-located or the cap falls below the floor.
std::optional<double> pu_limited_cap(const std::vector<TransmitterSpec>& pus,
                                     const ChannelGrid& grid, int first, int n,
                                     double sx, double sy, const AllocConfig& cfg) {
  double cap = cfg.sensing_eirp_cap_dbm;
  for (const auto& pu : pus) {
    int pu_ch = -1;
    try {
      pu_ch = channel_index(pu.freq_mhz, grid);
    } catch (const ValidationError&) {
      continue;  // PU outside the grid cannot constrain it
    }
    if (pu_ch < first || pu_ch >= first + n) continue;
    const double d = to_km(sx, sy, pu.x, pu.y, cfg.km_per_unit);
    if (d < kMinDistanceKm) return std::nullopt;
    cap = std::min(cap, pu.interference_threshold_dbm + path_loss_db(cfg.model, d, pu.freq_mhz));
  }
  if (cap < cfg.eirp_floor_dbm) return std::nullopt;
  return cap;
}

}  // namespace

AllocationPlan allocate(const std::vector<AllocationRequest>& requests,
                        const ChannelGrid& grid,
                        const std::vector<bool>& channel_free,
                        const std::vector<TransmitterSpec>& pus,
                        const AllocConfig& config) {
  if (channel_free.size() != static_cast<std::size_t>(grid.n_channels))
    throw ValidationError("allocate: channel_free size must equal n_channels");
  for (const auto& r : requests)
    if (!(r.bandwidth_mhz > 0.0))
      throw ValidationError("allocate: bandwidth must be > 0 for '" + r.requester_id + "'");

  // PU before SU, arrival order within each class.
  std::vector<std::size_t> order(requests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return requests[a].priority == Priority::PU && requests[b].priority == Priority::SU;
  });

  AllocationPlan plan;
  std::vector<Placed> placed;
  const bool sensing = config.mode == AllocationMode::sensing_dynamic;

  for (std::size_t idx : order) {
    const auto& req = requests[idx];
    const int needed =
        static_cast<int>(std::ceil(req.bandwidth_mhz / grid.channel_width_mhz));
    if (needed > grid.n_channels) {
      plan.rejections.push_back({req.requester_id, RejectReason::BANDWIDTH_EXCEEDS_GRID});
      continue;
    }

    bool saw_run = false, saw_pu_block = false, saw_su_block = false;
    std::optional<Grant> chosen;

    for (int first = 0; first + needed <= grid.n_channels; ++first) {
      bool run_free = true;
      for (int c = first; c < first + needed; ++c)
        if (!channel_free[static_cast<std::size_t>(c)]) {
          run_free = false;
          break;
        }
      if (!run_free) continue;
      saw_run = true;

      double cap;
      if (req.priority == Priority::PU) {
        cap = req.eirp_desired_dbm;
      } else if (!sensing) {
        cap = config.database_eirp_cap_dbm;
      } else {
        auto limited = pu_limited_cap(pus, grid, first, needed, req.x, req.y, config);
        if (!limited) {
          saw_pu_block = true;
          continue;
        }
        cap = *limited;
      }

      if (sensing) {
        // in-range co-channel overlap with an existing grant rules this run out
        bool blocked = false;
        for (const auto& p : placed) {
          if (!runs_overlap(p.grant, first, needed)) continue;
          if (in_range(p, req.x, req.y, p.grant.eirp_cap_dbm,
                       config.su_interference_threshold_dbm, config) ||
              in_range({{req.requester_id, first, needed, cap, req.priority},
                        req.x, req.y,
                        grid.start_mhz + (first + 0.5 * needed) * grid.channel_width_mhz},
                       p.x, p.y, cap, config.su_interference_threshold_dbm, config)) {
            blocked = true;
            break;
          }
        }
        if (blocked) {
          saw_su_block = true;
          continue;
        }
      }

      chosen = Grant{req.requester_id, first, needed, cap, req.priority};
      break;
    }

    if (!chosen) {
      RejectReason reason = RejectReason::NO_FREE_RUN;
      if (saw_su_block) reason = RejectReason::SU_CONFLICT;
      else if (saw_pu_block) reason = RejectReason::PU_PROTECTION;
      else if (saw_run) reason = RejectReason::NO_FREE_RUN;
      plan.rejections.push_back({req.requester_id, reason});
      continue;
    }

    const double center_mhz = grid.start_mhz +
        (chosen->first_channel + 0.5 * chosen->n_channels) * grid.channel_width_mhz;
    placed.push_back({*chosen, req.x, req.y, center_mhz});
    plan.grants.push_back(*chosen);
  }

  // Flag co-channel grant pairs within mutual interference range.
  for (std::size_t i = 0; i < placed.size(); ++i) {
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      const auto& a = placed[i];
      const auto& b = placed[j];
      if (!runs_overlap(a.grant, b.grant.first_channel, b.grant.n_channels)) continue;
      const bool hot =
          in_range(a, b.x, b.y, a.grant.eirp_cap_dbm, config.su_interference_threshold_dbm,
                   config) ||
          in_range(b, a.x, a.y, b.grant.eirp_cap_dbm, config.su_interference_threshold_dbm,
                   config);
      if (!hot) continue;
      ConflictFlag f;
      f.requester_a = a.grant.requester_id;
      f.requester_b = b.grant.requester_id;
      f.channel = std::max(a.grant.first_channel, b.grant.first_channel);
      f.separation_km = to_km(a.x, a.y, b.x, b.y, config.km_per_unit);
      plan.conflicts.push_back(f);
    }
  }
  return plan;
}

}  // namespace remtk
