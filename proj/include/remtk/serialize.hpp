#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "remtk/ingest.hpp"
#include "remtk/rem.hpp"

namespace remtk {

nlohmann::json frame_json(const CoordFrame& frame);
CoordFrame frame_from_json(const nlohmann::json& j);

/// Checkpoint for a kriging surrogate: variogram parameters, fit objective,
/// the sample set, and the coordinate frame.
nlohmann::json checkpoint_json(const KrigingSurrogate& surrogate, const CoordFrame& frame);

/// Checkpoint for a neural surrogate (tag "nn" or "pinn"): layer dims, all
/// parameters, standardization constants, and the coordinate frame. Parameters
/// are written as shortest-round-trip doubles, so reloading reproduces forward
/// outputs exactly.
nlohmann::json checkpoint_json(const MlpSurrogate& surrogate, const CoordFrame& frame,
                               const nlohmann::json& train_config_echo);

/// Rebuilds a surrogate from a checkpoint; fills frame_out when non-null.
std::unique_ptr<Surrogate> surrogate_from_json(const nlohmann::json& j,
                                               CoordFrame* frame_out);

}  // namespace remtk
