// Benchmark: OpenMP map-prediction kernel vs the serial reference.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "remtk/geostat.hpp"
#include "remtk/neural.hpp"
#include "remtk/rem.hpp"

using namespace remtk;

namespace {

double time_ms(const std::function<Rem()>& fn, Rem& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void run(const char* name, const Surrogate& surrogate, const MapGrid& grid) {
  Rem serial, parallel;
  const double ts = time_ms([&] { return predict_map_serial(surrogate, grid); }, serial);
  const double tp = time_ms([&] { return predict_map(surrogate, grid); }, parallel);
  bool identical = serial.values == parallel.values;
  std::printf("%-8s %4dx%-4d serial %8.1f ms  parallel %8.1f ms  speedup %5.2fx  %s\n",
              name, grid.nx, grid.ny, ts, tp, ts / tp,
              identical ? "bitwise-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both paths run serially\n");
#endif

  UniformRng rng(42);
  std::vector<Sample2D> samples;
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    samples.push_back({x, y, -100.0 + 10.0 * std::sin(3.0 * x) * std::cos(2.0 * y)});
  }
  VariogramModel vm{VariogramKind::exponential, 0.01, 25.0, 0.5, 0.0};
  KrigingSurrogate kriging(samples, vm);

  MlpModel mlp = init_model({2, 64, 64, 64, 64, 1}, 7);
  mlp.z_mean = -100.0;
  mlp.z_std = 10.0;
  MlpSurrogate nn(mlp, "nn");

  for (int n : {64, 128}) {
    MapGrid grid;
    grid.nx = n;
    grid.ny = n;
    run("kriging", kriging, grid);
    run("nn", nn, grid);
  }
  return 0;
}
