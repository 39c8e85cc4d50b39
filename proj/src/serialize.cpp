#include "remtk/serialize.hpp"

#include "remtk/errors.hpp"

namespace remtk {

using nlohmann::json;

json frame_json(const CoordFrame& frame) {
  return {{"lat0_deg", frame.lat0_deg},
          {"lon0_deg", frame.lon0_deg},
          {"scale_x", frame.scale_x},
          {"scale_y", frame.scale_y}};
}

CoordFrame frame_from_json(const json& j) {
  CoordFrame f;
  f.lat0_deg = j.at("lat0_deg").get<double>();
  f.lon0_deg = j.at("lon0_deg").get<double>();
  f.scale_x = j.at("scale_x").get<double>();
  f.scale_y = j.at("scale_y").get<double>();
  if (f.scale_x == 0.0 || f.scale_y == 0.0)
    throw ValidationError("checkpoint frame is not invertible");
  return f;
}

json checkpoint_json(const KrigingSurrogate& surrogate, const CoordFrame& frame) {
  const auto& vm = surrogate.model();
  json samples = json::array();
  for (const auto& s : surrogate.samples()) samples.push_back({s.x, s.y, s.z});
  return {{"kind", "kriging"},
          {"variogram",
           {{"kind", to_string(vm.kind)},
            {"nugget", vm.nugget},
            {"sill", vm.sill},
            {"range_len", vm.range_len},
            {"fit_objective", vm.fit_objective}}},
          {"samples", samples},
          {"frame", frame_json(frame)}};
}

json checkpoint_json(const MlpSurrogate& surrogate, const CoordFrame& frame,
                     const json& train_config_echo) {
  const auto& m = surrogate.model();
  json weights = json::array();
  json biases = json::array();
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    weights.push_back(m.weights[l]);
    biases.push_back(m.biases[l]);
  }
  return {{"kind", surrogate.tag()},
          {"layer_dims", m.layer_dims},
          {"weights", weights},
          {"biases", biases},
          {"z_mean", m.z_mean},
          {"z_std", m.z_std},
          {"train_config", train_config_echo},
          {"frame", frame_json(frame)}};
}

std::unique_ptr<Surrogate> surrogate_from_json(const json& j, CoordFrame* frame_out) {
  const std::string kind = j.at("kind").get<std::string>();
  if (frame_out != nullptr) *frame_out = frame_from_json(j.at("frame"));

  if (kind == "kriging") {
    VariogramModel vm;
    const auto& v = j.at("variogram");
    vm.kind = variogram_kind_from_string(v.at("kind").get<std::string>());
    vm.nugget = v.at("nugget").get<double>();
    vm.sill = v.at("sill").get<double>();
    vm.range_len = v.at("range_len").get<double>();
    vm.fit_objective = v.value("fit_objective", 0.0);
    std::vector<Sample2D> samples;
    for (const auto& row : j.at("samples"))
      samples.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                         row.at(2).get<double>()});
    if (samples.empty()) throw ValidationError("kriging checkpoint has no samples");
    return std::make_unique<KrigingSurrogate>(std::move(samples), vm);
  }

  if (kind == "nn" || kind == "pinn") {
    MlpModel m;
    m.layer_dims = j.at("layer_dims").get<std::vector<int>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    m.z_mean = j.at("z_mean").get<double>();
    m.z_std = j.at("z_std").get<double>();
    if (m.z_std <= 0.0) throw ValidationError("checkpoint z_std must be > 0");
    if (m.weights.size() + 1 != m.layer_dims.size())
      throw ValidationError("checkpoint layer_dims inconsistent with weights");
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
      const std::size_t expect = static_cast<std::size_t>(m.layer_dims[l]) *
                                 static_cast<std::size_t>(m.layer_dims[l + 1]);
      if (m.weights[l].size() != expect ||
          m.biases[l].size() != static_cast<std::size_t>(m.layer_dims[l + 1]))
        throw ValidationError("checkpoint weight shapes inconsistent at layer " +
                              std::to_string(l));
    }
    return std::make_unique<MlpSurrogate>(std::move(m), kind);
  }

  throw ValidationError("unknown checkpoint kind '" + kind + "'");
}

}  // namespace remtk
