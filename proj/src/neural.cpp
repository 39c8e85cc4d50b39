#include "remtk/neural.hpp"

#include <cmath>
#include <string>

#include "remtk/errors.hpp"

namespace remtk {

namespace {

/// Per-layer activations for one forward pass; act[0] is the input pair.
struct Activations {
  std::vector<std::vector<double>> act;
};

double forward_into(const MlpModel& model, double x, double y, Activations& cache) {
  const std::size_t nl = model.n_layers();
  cache.act.resize(nl + 1);
  cache.act[0] = {x, y};
  for (std::size_t l = 0; l < nl; ++l) {
    const int n_in = model.layer_dims[l];
    const int n_out = model.layer_dims[l + 1];
    const auto& w = model.weights[l];
    const auto& b = model.biases[l];
    const auto& in = cache.act[l];
    auto& out = cache.act[l + 1];
    out.assign(static_cast<std::size_t>(n_out), 0.0);
    const bool hidden = (l + 1 < nl);
    for (int r = 0; r < n_out; ++r) {
      double s = b[static_cast<std::size_t>(r)];
      const double* row = &w[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_in)];
      for (int c = 0; c < n_in; ++c) s += row[c] * in[static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(r)] = hidden ? std::tanh(s) : s;
    }
  }
  return cache.act[nl][0];
}

}  // namespace

std::size_t MlpModel::n_params() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
  return n;
}

Gradients Gradients::zeros_like(const MlpModel& model) {
  Gradients g;
  g.weights.resize(model.weights.size());
  g.biases.resize(model.biases.size());
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    g.weights[l].assign(model.weights[l].size(), 0.0);
    g.biases[l].assign(model.biases[l].size(), 0.0);
  }
  return g;
}

MlpModel init_model(const std::vector<int>& layer_dims, std::uint64_t seed,
                    double init_scale) {
  if (layer_dims.size() < 2 || layer_dims.front() != 2 || layer_dims.back() != 1)
    throw ValidationError("layer_dims must start with 2 and end with 1");
  for (int d : layer_dims)
    if (d < 1) throw ValidationError("layer_dims entries must be >= 1");
  if (!(init_scale > 0.0)) throw ValidationError("init_scale must be > 0");

  MlpModel m;
  m.layer_dims = layer_dims;
  UniformRng rng(seed);
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const int fan_in = layer_dims[l];
    const int n_out = layer_dims[l + 1];
    const double a = init_scale / std::sqrt(static_cast<double>(fan_in));
    std::vector<double> w(static_cast<std::size_t>(n_out) * static_cast<std::size_t>(fan_in));
    for (double& v : w) v = rng.uniform(-a, a);
    m.weights.push_back(std::move(w));
    m.biases.emplace_back(static_cast<std::size_t>(n_out), 0.0);
  }
  return m;
}

double forward_standardized(const MlpModel& model, double x, double y) {
  Activations cache;
  return forward_into(model, x, y, cache);
}

double forward(const MlpModel& model, double x, double y) {
  return model.z_mean + model.z_std * forward_standardized(model, x, y);
}

void accumulate_output_gradient(const MlpModel& model, double x, double y,
                                double coeff, Gradients& g) {
  Activations cache;
  forward_into(model, x, y, cache);
  const std::size_t nl = model.n_layers();

  std::vector<double> delta = {coeff};  // dL/d(pre-activation) of the output
  for (std::size_t l = nl; l-- > 0;) {
    const int n_in = model.layer_dims[l];
    const int n_out = model.layer_dims[l + 1];
    const auto& in = cache.act[l];
    auto& gw = g.weights[l];
    auto& gb = g.biases[l];
    for (int r = 0; r < n_out; ++r) {
      const double d = delta[static_cast<std::size_t>(r)];
      gb[static_cast<std::size_t>(r)] += d;
      double* grow = &gw[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_in)];
      for (int c = 0; c < n_in; ++c) grow[c] += d * in[static_cast<std::size_t>(c)];
    }
    if (l == 0) break;
    const auto& w = model.weights[l];
    std::vector<double> prev(static_cast<std::size_t>(n_in), 0.0);
    for (int c = 0; c < n_in; ++c) {
      double s = 0.0;
      for (int r = 0; r < n_out; ++r)
        s += w[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_in) + c] *
             delta[static_cast<std::size_t>(r)];
      // layer l's outputs went through tanh; act[l] holds tanh(pre)
      const double t = in[static_cast<std::size_t>(c)];
      prev[static_cast<std::size_t>(c)] = s * (1.0 - t * t);
    }
    delta = std::move(prev);
  }
}

double data_loss(const MlpModel& model, const std::vector<Sample2D>& batch) {
  if (batch.empty()) throw InsufficientDataError("data_loss: empty batch");
  double s = 0.0;
  for (const auto& p : batch) {
    const double t = (p.z - model.z_mean) / model.z_std;
    const double e = forward_standardized(model, p.x, p.y) - t;
    s += e * e;
  }
  return s / static_cast<double>(batch.size());
}

Gradients param_gradients(const MlpModel& model, const std::vector<Sample2D>& batch) {
  if (batch.empty()) throw InsufficientDataError("param_gradients: empty batch");
  Gradients g = Gradients::zeros_like(model);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (const auto& p : batch) {
    const double t = (p.z - model.z_mean) / model.z_std;
    const double u = forward_standardized(model, p.x, p.y);
    accumulate_output_gradient(model, p.x, p.y, 2.0 * (u - t) * inv_n, g);
  }
  return g;
}

double input_laplacian(const MlpModel& model, double x, double y, double h) {
  if (!(h > 0.0)) throw ValidationError("input_laplacian: h must be > 0");
  const double c = forward_standardized(model, x, y);
  const double s = forward_standardized(model, x + h, y) +
                   forward_standardized(model, x - h, y) +
                   forward_standardized(model, x, y + h) +
                   forward_standardized(model, x, y - h);
  return (s - 4.0 * c) / (h * h);
}

TrainResult train_core(const std::vector<Sample2D>& samples, const TrainConfig& config,
                       const ExtraLossHook* hook) {
  if (samples.empty()) throw InsufficientDataError("training needs at least 1 sample");
  if (config.epochs < 1) throw ValidationError("epochs must be >= 1");
  if (!(config.learning_rate > 0.0)) throw ValidationError("learning_rate must be > 0");

  MlpModel model = init_model(config.layer_dims, config.seed, config.init_scale);

  double mean = 0.0;
  for (const auto& p : samples) mean += p.z;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (const auto& p : samples) var += (p.z - mean) * (p.z - mean);
  var /= static_cast<double>(samples.size());
  model.z_mean = mean;
  model.z_std = var > 0.0 ? std::sqrt(var) : 1.0;

  Gradients m1 = Gradients::zeros_like(model);
  Gradients m2 = Gradients::zeros_like(model);

  TrainResult res;
  res.loss_trace.reserve(static_cast<std::size_t>(config.epochs));
  res.data_loss_trace.reserve(static_cast<std::size_t>(config.epochs));

  const bool use_extra = hook != nullptr && hook->lambda != 0.0;
  const bool trace_extra = hook != nullptr;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Gradients g = param_gradients(model, samples);
    const double ld = data_loss(model, samples);
    double lp = 0.0;
    if (use_extra) {
      lp = hook->loss_and_grad(model, g);
    } else if (trace_extra) {
      lp = hook->loss_only(model);
    }
    const double total = ld + (trace_extra ? hook->lambda * lp : 0.0);
    if (!std::isfinite(total))
      throw NumericError("training diverged (non-finite loss) at epoch " +
                         std::to_string(epoch));
    res.data_loss_trace.push_back(ld);
    if (trace_extra) res.pde_loss_trace.push_back(lp);
    res.loss_trace.push_back(total);

    const double t = static_cast<double>(epoch + 1);
    const double bc1 = 1.0 - std::pow(config.beta1, t);
    const double bc2 = 1.0 - std::pow(config.beta2, t);
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
      auto update = [&](std::vector<double>& p, const std::vector<double>& grad,
                        std::vector<double>& m, std::vector<double>& v) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
          v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
          const double mhat = m[i] / bc1;
          const double vhat = v[i] / bc2;
          p[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_eps);
        }
      };
      update(model.weights[l], g.weights[l], m1.weights[l], m2.weights[l]);
      update(model.biases[l], g.biases[l], m1.biases[l], m2.biases[l]);
    }
  }

  res.model = std::move(model);
  return res;
}

TrainResult train_mlp(const std::vector<Sample2D>& samples, const TrainConfig& config) {
  return train_core(samples, config, nullptr);
}

}  // namespace remtk
