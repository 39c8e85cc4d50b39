#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "remtk/geostat.hpp"  // Sample2D

namespace remtk {

/// Deterministic uniform generator: mt19937_64 with the double mapping pinned
/// to (bits >> 11) * 2^-53, so the stream is identical on every platform.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 gen_;
};

/// Dense feed-forward network, tanh hidden layers, identity output.
/// Outputs are standardized; forward() de-standardizes via z_mean + z_std * u.
struct MlpModel {
  std::vector<int> layer_dims;                 // e.g. [2, 64, 64, 64, 64, 1]
  std::vector<std::vector<double>> weights;    // weights[l]: dims[l+1] x dims[l], row-major
  std::vector<std::vector<double>> biases;     // biases[l]: dims[l+1]
  double z_mean = 0.0;
  double z_std = 1.0;

  std::size_t n_layers() const { return weights.size(); }
  std::size_t n_params() const;
};

struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  static Gradients zeros_like(const MlpModel& model);
};

struct TrainConfig {
  double learning_rate = 0.01;
  int epochs = 1000;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double init_scale = 1.0;  // multiplies the 1/sqrt(fan_in) init half-width
  std::vector<int> layer_dims = {2, 64, 64, 64, 64, 1};
};

/// Weights uniform on +-init_scale/sqrt(fan_in), biases zero. Deterministic
/// in the seed. layer_dims must start with 2 and end with 1.
MlpModel init_model(const std::vector<int>& layer_dims, std::uint64_t seed,
                    double init_scale = 1.0);

/// Standardized network output u(x, y).
double forward_standardized(const MlpModel& model, double x, double y);

/// De-standardized prediction in dBm: z_mean + z_std * u(x, y).
double forward(const MlpModel& model, double x, double y);

/// Reverse-mode gradient of the mean squared error over the batch, taken in
/// standardized units: L = mean_k (u(x_k, y_k) - (z_k - z_mean)/z_std)^2.
Gradients param_gradients(const MlpModel& model, const std::vector<Sample2D>& batch);

/// Data loss value only (standardized MSE, as in param_gradients).
double data_loss(const MlpModel& model, const std::vector<Sample2D>& batch);

/// Forward at (x, y), then backward with dL/du = coeff, accumulating into g.
/// Building block for both the data loss and PDE-residual gradients.
void accumulate_output_gradient(const MlpModel& model, double x, double y,
                                double coeff, Gradients& g);

/// 5-point stencil estimate of the Laplacian of the standardized output u:
/// (u(x+h,y) + u(x-h,y) + u(x,y+h) + u(x,y-h) - 4 u(x,y)) / h^2.
double input_laplacian(const MlpModel& model, double x, double y, double h);

struct TrainResult {
  MlpModel model;
  std::vector<double> loss_trace;       // total loss per epoch
  std::vector<double> data_loss_trace;  // data term per epoch
  std::vector<double> pde_loss_trace;   // empty when no PDE term
};

/// Optional extra loss term for the shared trainer. loss_only must not touch
/// parameters; loss_and_grad returns the unweighted loss and accumulates the
/// already-lambda-scaled gradient into its argument.
struct ExtraLossHook {
  double lambda = 0.0;
  std::function<double(const MlpModel&)> loss_only;
  std::function<double(const MlpModel&, Gradients&)> loss_and_grad;
};

/// Full-batch deterministic Adam training of the data MSE plus an optional
/// extra term. With hook == nullptr, or hook->lambda == 0, the parameter
/// trajectory is exactly the plain data-loss trajectory.
TrainResult train_core(const std::vector<Sample2D>& samples, const TrainConfig& config,
                       const ExtraLossHook* hook);

/// Plain NN baseline: full-batch Adam on the data MSE alone.
TrainResult train_mlp(const std::vector<Sample2D>& samples, const TrainConfig& config);

}  // namespace remtk
