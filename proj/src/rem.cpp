#include "remtk/rem.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "remtk/errors.hpp"

namespace remtk {

double KrigingSurrogate::predict(double x, double y) const {
  return krige(samples_, model_, x, y).prediction;
}

namespace {

void check_grid(const Surrogate& surrogate, const MapGrid& grid) {
  if (!surrogate.fitted())
    throw ValidationError("predict_map: surrogate is not fitted");
  if (grid.nx < 2 || grid.ny < 2)
    throw ValidationError("map grid resolution must be at least 2x2");
  if (!(grid.x_max > grid.x_min && grid.y_max > grid.y_min))
    throw ValidationError("map grid bounding box is degenerate");
}

}  // namespace

Rem predict_map_serial(const Surrogate& surrogate, const MapGrid& grid) {
  check_grid(surrogate, grid);
  Rem rem;
  rem.grid = grid;
  rem.model_tag = surrogate.tag();
  rem.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      rem.values[static_cast<std::size_t>(j) * grid.nx + i] =
          surrogate.predict(grid.cx(i), grid.cy(j));
  return rem;
}

Rem predict_map(const Surrogate& surrogate, const MapGrid& grid) {
  check_grid(surrogate, grid);
  Rem rem;
  rem.grid = grid;
  rem.model_tag = surrogate.tag();
  rem.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
  const int n = grid.nx * grid.ny;
  // exceptions must not escape the parallel region; capture and rethrow
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    try {
      const int j = k / grid.nx;
      const int i = k % grid.nx;
      rem.values[static_cast<std::size_t>(k)] = surrogate.predict(grid.cx(i), grid.cy(j));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rem;
}

MseResult test_mse(const Surrogate& surrogate, const std::vector<Sample2D>& held_out) {
  if (held_out.empty()) throw InsufficientDataError("test_mse: empty held-out set");
  MseResult r;
  r.n = held_out.size();
  double se = 0.0, mean = 0.0;
  for (const auto& p : held_out) mean += p.z;
  mean /= static_cast<double>(r.n);
  double var = 0.0;
  for (const auto& p : held_out) {
    const double e = surrogate.predict(p.x, p.y) - p.z;
    se += e * e;
    var += (p.z - mean) * (p.z - mean);
  }
  r.raw_dbm2 = se / static_cast<double>(r.n);
  var /= static_cast<double>(r.n);
  r.standardized = var > 0.0 ? r.raw_dbm2 / var : r.raw_dbm2;
  return r;
}

std::string rem_csv(const Rem& rem) {
  std::string out;
  char buf[64];
  for (int j = 0; j < rem.grid.ny; ++j) {
    for (int i = 0; i < rem.grid.nx; ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof(buf), "%.9g", rem.at(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace remtk
