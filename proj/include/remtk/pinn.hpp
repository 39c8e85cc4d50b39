#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "remtk/neural.hpp"

namespace remtk {

struct PinnConfig {
  TrainConfig base;
  double lambda_pde = 1.0;
  int n_collocation = 1024;
  std::uint64_t collocation_seed = 1;
  double stencil_h = 1e-3;
  // normalized domain box
  double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;
};

/// n_collocation points uniform over the domain box, deterministic in
/// collocation_seed.
std::vector<std::pair<double, double>> sample_collocation(const PinnConfig& config);

/// Mean over points of the squared stencil Laplacian of the standardized
/// output.
double pde_loss(const MlpModel& model,
                const std::vector<std::pair<double, double>>& points, double stencil_h);

/// Physics-informed training: L = L_data + lambda_pde * L_pde, full batch.
/// With lambda_pde = 0 the parameter trajectory matches train_mlp bit-exactly
/// under equal base config and seed.
TrainResult train_pinn(const std::vector<Sample2D>& samples, const PinnConfig& config);

}  // namespace remtk
