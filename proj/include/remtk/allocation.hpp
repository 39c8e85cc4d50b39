#pragma once

#include <string>
#include <vector>

#include "remtk/occupancy.hpp"

namespace remtk {

enum class PathLossKind { free_space, log_distance };

struct PathLossModel {
  PathLossKind kind = PathLossKind::free_space;
  // log_distance parameters
  double exponent = 2.0;
  double d0_km = 1.0;
  double pl0_db = 88.0;
};

/// Free space: 32.44 + 20 log10(d_km) + 20 log10(f_mhz).
/// Log-distance: PL0 + 10 n log10(d / d0). Throws ValidationError on d <= 0.
double path_loss_db(const PathLossModel& model, double distance_km, double freq_mhz);

struct TransmitterSpec {
  double x = 0.0, y = 0.0;  // normalized coordinates
  double eirp_dbm = 0.0;
  double freq_mhz = 600.0;
  double rx_sensitivity_dbm = -90.0;
  double interference_threshold_dbm = -118.0;
};

struct RadiusResult {
  double radius_km = 0.0;
  bool solvable = true;  // false = zero-coverage, flagged rather than an error
};

/// Largest d with eirp - path_loss(d) >= rx_sensitivity, closed form.
RadiusResult coverage_radius_km(const TransmitterSpec& tx, const PathLossModel& model);

/// Minimum separation so the SU signal at the PU location stays at or below
/// the PU's interference threshold.
RadiusResult protection_radius_km(const TransmitterSpec& pu, double su_eirp_dbm,
                                  const PathLossModel& model);

enum class Priority { PU, SU };

struct AllocationRequest {
  std::string requester_id;
  double bandwidth_mhz = 6.0;
  double x = 0.0, y = 0.0;
  double eirp_desired_dbm = 16.0;
  Priority priority = Priority::SU;
};

enum class RejectReason { NO_FREE_RUN, PU_PROTECTION, SU_CONFLICT, BANDWIDTH_EXCEEDS_GRID };

std::string to_string(RejectReason reason);

struct Grant {
  std::string requester_id;
  int first_channel = 0;
  int n_channels = 0;
  double eirp_cap_dbm = 0.0;
  Priority priority = Priority::SU;
};

struct Rejection {
  std::string requester_id;
  RejectReason reason = RejectReason::NO_FREE_RUN;
};

struct ConflictFlag {
  std::string requester_a;
  std::string requester_b;
  int channel = 0;           // lowest shared channel
  double separation_km = 0.0;
};

struct AllocationPlan {
  std::vector<Grant> grants;
  std::vector<Rejection> rejections;
  std::vector<ConflictFlag> conflicts;
};

enum class AllocationMode { database_conservative, sensing_dynamic };

struct AllocConfig {
  AllocationMode mode = AllocationMode::database_conservative;
  PathLossModel model;
  double km_per_unit = 1.0;               // normalized distance -> km
  double database_eirp_cap_dbm = 16.0;
  double sensing_eirp_cap_dbm = 42.0;
  double su_interference_threshold_dbm = -118.0;
  double eirp_floor_dbm = -200.0;         // caps below this make a run unusable
};

/// Channels usable for allocation: FREE (single-site) or FREE_BOTH (two-site)
/// in every slot of the matrix.
std::vector<bool> free_channels_from_matrix(const AvailabilityMatrix& matrix);

/// Requests are processed PU-first then arrival order; each is granted the
/// lowest-index contiguous run of free channels covering its bandwidth.
/// database_conservative: channel set = the static free list, SU caps are the
/// database cap, grants may overlap and co-channel in-range pairs are flagged.
/// sensing_dynamic: SU caps keep every co-channel PU at or below its
/// interference threshold (never above the sensing cap); in-range co-channel
/// SU overlap is disallowed, the later request moves to the next run or is
/// rejected.
AllocationPlan allocate(const std::vector<AllocationRequest>& requests,
                        const ChannelGrid& grid,
                        const std::vector<bool>& channel_free,
                        const std::vector<TransmitterSpec>& pus,
                        const AllocConfig& config);

}  // namespace remtk
