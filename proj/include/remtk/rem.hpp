#pragma once

#include <memory>
#include <string>
#include <vector>

#include "remtk/geostat.hpp"
#include "remtk/neural.hpp"

namespace remtk {

struct MapGrid {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  int nx = 64, ny = 64;

  // cell-center coordinates
  double cx(int i) const { return x_min + (i + 0.5) * (x_max - x_min) / nx; }
  double cy(int j) const { return y_min + (j + 0.5) * (y_max - y_min) / ny; }
};

/// A fitted map from normalized 2-D coordinates to predicted power, dBm.
class Surrogate {
 public:
  virtual ~Surrogate() = default;
  virtual double predict(double x, double y) const = 0;
  virtual std::string tag() const = 0;
  virtual bool fitted() const = 0;
};

class KrigingSurrogate final : public Surrogate {
 public:
  KrigingSurrogate(std::vector<Sample2D> samples, VariogramModel model)
      : samples_(std::move(samples)), model_(model) {}
  double predict(double x, double y) const override;
  std::string tag() const override { return "kriging"; }
  bool fitted() const override { return !samples_.empty(); }
  const std::vector<Sample2D>& samples() const { return samples_; }
  const VariogramModel& model() const { return model_; }

 private:
  std::vector<Sample2D> samples_;
  VariogramModel model_;
};

class MlpSurrogate final : public Surrogate {
 public:
  MlpSurrogate(MlpModel model, std::string tag)
      : model_(std::move(model)), tag_(std::move(tag)) {}
  double predict(double x, double y) const override { return forward(model_, x, y); }
  std::string tag() const override { return tag_; }
  bool fitted() const override { return !model_.weights.empty(); }
  const MlpModel& model() const { return model_; }

 private:
  MlpModel model_;
  std::string tag_;
};

struct Rem {
  MapGrid grid;
  std::vector<double> values;  // [j * nx + i], row j = 0 is minimum y
  std::string model_tag;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
};

/// Cell-center prediction over the grid. OpenMP-parallel when available;
/// cells are independent, so the result is bitwise identical to the serial
/// reference.
Rem predict_map(const Surrogate& surrogate, const MapGrid& grid);

/// Serial reference implementation, kept for testing and benchmarking.
Rem predict_map_serial(const Surrogate& surrogate, const MapGrid& grid);

struct MseResult {
  double raw_dbm2 = 0.0;
  double standardized = 0.0;  // raw / population variance of the truth values
  std::size_t n = 0;
};

MseResult test_mse(const Surrogate& surrogate, const std::vector<Sample2D>& held_out);

/// ny rows of nx comma-separated values, row 0 = minimum y, 9 significant
/// digits.
std::string rem_csv(const Rem& rem);

}  // namespace remtk
