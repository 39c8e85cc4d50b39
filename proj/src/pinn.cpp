#include "remtk/pinn.hpp"

#include "remtk/errors.hpp"

namespace remtk {

std::vector<std::pair<double, double>> sample_collocation(const PinnConfig& config) {
  if (config.n_collocation < 1)
    throw ValidationError("n_collocation must be >= 1");
  if (!(config.x_max > config.x_min && config.y_max > config.y_min))
    throw ValidationError("collocation domain box is degenerate");
  UniformRng rng(config.collocation_seed);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(config.n_collocation));
  for (int i = 0; i < config.n_collocation; ++i) {
    const double x = rng.uniform(config.x_min, config.x_max);
    const double y = rng.uniform(config.y_min, config.y_max);
    pts.emplace_back(x, y);
  }
  return pts;
}

double pde_loss(const MlpModel& model,
                const std::vector<std::pair<double, double>>& points, double stencil_h) {
  if (points.empty()) throw InsufficientDataError("pde_loss: empty point set");
  double s = 0.0;
  for (const auto& [x, y] : points) {
    const double lap = input_laplacian(model, x, y, stencil_h);
    s += lap * lap;
  }
  return s / static_cast<double>(points.size());
}

TrainResult train_pinn(const std::vector<Sample2D>& samples, const PinnConfig& config) {
  if (config.lambda_pde < 0.0) throw ValidationError("lambda_pde must be >= 0");
  if (!(config.stencil_h > 0.0)) throw ValidationError("stencil_h must be > 0");

  const auto points = sample_collocation(config);
  const double h = config.stencil_h;
  const double inv_h2 = 1.0 / (h * h);
  const double inv_n = 1.0 / static_cast<double>(points.size());
  const double lambda = config.lambda_pde;

  ExtraLossHook hook;
  hook.lambda = lambda;
  hook.loss_only = [&points, h](const MlpModel& m) { return pde_loss(m, points, h); };
  hook.loss_and_grad = [&points, h, inv_h2, inv_n, lambda](const MlpModel& m,
                                                           Gradients& g) {
    double loss = 0.0;
    for (const auto& [x, y] : points) {
      const double lap = input_laplacian(m, x, y, h);
      loss += lap * lap;
      // d(lambda * mean lap^2)/dtheta: backprop through the 5 stencil taps
      const double c = 2.0 * lambda * lap * inv_n * inv_h2;
      accumulate_output_gradient(m, x + h, y, c, g);
      accumulate_output_gradient(m, x - h, y, c, g);
      accumulate_output_gradient(m, x, y + h, c, g);
      accumulate_output_gradient(m, x, y - h, c, g);
      accumulate_output_gradient(m, x, y, -4.0 * c, g);
    }
    return loss * inv_n;
  };

  return train_core(samples, config.base, &hook);
}

}  // namespace remtk
