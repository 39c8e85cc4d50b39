#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace remtk {

struct Sample2D {
  double x = 0.0;  // normalized coordinates from CoordFrame
  double y = 0.0;
  double z = 0.0;  // received power, dBm
};

struct EmpiricalVariogram {
  std::vector<double> bin_centers;
  std::vector<double> gamma;
  std::vector<std::size_t> counts;
  double max_lag = 0.0;
};

enum class VariogramKind { exponential, spherical, gaussian };

std::string to_string(VariogramKind kind);
VariogramKind variogram_kind_from_string(const std::string& s);

struct VariogramModel {
  VariogramKind kind = VariogramKind::exponential;
  double nugget = 0.0;
  double sill = 1.0;
  double range_len = 1.0;
  double fit_objective = 0.0;

  /// Model semivariance at lag h; gamma(0) = nugget.
  double operator()(double h) const;
};

/// Method-of-moments estimator: gamma(b) = sum over pairs in bin b of
/// (z_i - z_j)^2 / (2 N_b). Lags above max_lag are dropped; pass max_lag <= 0
/// to use half the maximum pairwise distance.
EmpiricalVariogram empirical_variogram(const std::vector<Sample2D>& samples,
                                       std::size_t n_bins, double max_lag = 0.0);

/// Count-weighted least squares over a coarse 16x16x16 parameter grid followed
/// by 100 coordinate-descent refinement steps. Needs >= 3 nonempty bins.
VariogramModel fit_variogram(const EmpiricalVariogram& ev, VariogramKind kind);

struct KrigeResult {
  double prediction = 0.0;  // dBm
  double variance = 0.0;    // dBm^2, floored at 0
  std::vector<double> weights;
};

/// Ordinary kriging at a single query point: (n+1)x(n+1) system with the
/// semivariance matrix, a row of ones for unbiasedness, and a Lagrange
/// multiplier. Duplicate locations with nugget > 0 are averaged before
/// assembly; duplicates with nugget = 0 raise NumericError naming the
/// colliding indices.
KrigeResult krige(const std::vector<Sample2D>& samples, const VariogramModel& model,
                  double qx, double qy);

}  // namespace remtk
