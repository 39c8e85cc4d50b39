// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line each. Returns nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "remtk/allocation.hpp"
#include "remtk/geostat.hpp"
#include "remtk/ingest.hpp"
#include "remtk/neural.hpp"
#include "remtk/occupancy.hpp"
#include "remtk/pinn.hpp"
#include "remtk/rem.hpp"

namespace fs = std::filesystem;
using namespace remtk;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, double seconds) {
  std::printf("%s criterion %d: %-42s (%.1f s)\n", pass ? "PASS" : "FAIL", id, name,
              seconds);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

Measurement sample(double t, int channel, double power, const std::string& site) {
  Measurement m;
  m.timestamp_s = t;
  m.site_id = site;
  m.lat_deg = 42.0;
  m.lon_deg = -93.6;
  m.freq_mhz = 470.0 + (channel + 0.5) * 6.0;
  m.power_dbm = power;
  return m;
}

// ---- criterion 1: occupancy vs brute-force counter, exact ----------------

void criterion_occupancy() {
  Timer timer;
  bool pass = true;
  const ChannelGrid grid{470.0, 6.0, 23};
  OccupancyConfig cfg;

  std::mt19937_64 gen(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto make_site = [&](const std::string& site) {
    std::vector<Measurement> ms;
    for (int slot = 0; slot < 900; ++slot)
      for (int c = 0; c < 23; ++c) {
        const double duty = 0.05 + 0.9 * static_cast<double>(c) / 22.0;
        ms.push_back(sample(slot + 0.5, c, u(gen) < duty ? -70.0 : -150.0, site));
      }
    return ms;
  };
  auto site_a = make_site("a");
  auto site_b = make_site("b");
  std::shuffle(site_a.begin(), site_a.end(), gen);

  // brute-force: count occupied cells per slot directly from the samples
  auto oracle_fractions = [&](const std::vector<Measurement>& ms) {
    std::map<std::int64_t, std::map<int, bool>> cells;
    for (const auto& m : ms) {
      const std::int64_t slot = static_cast<std::int64_t>(std::floor(m.timestamp_s));
      const int c = static_cast<int>((m.freq_mhz - 470.0) / 6.0);
      cells[slot][c] = cells[slot][c] || (m.power_dbm > cfg.threshold_dbm);
    }
    std::vector<double> out;
    for (const auto& [slot, chans] : cells) {
      int occ = 0;
      for (const auto& [c, o] : chans)
        if (o) ++occ;
      out.push_back(static_cast<double>(occ) / static_cast<double>(chans.size()));
    }
    return out;
  };

  auto fr = slot_occupancy(site_a, grid, cfg);
  auto oracle = oracle_fractions(site_a);
  if (fr.size() != oracle.size()) pass = false;
  for (std::size_t i = 0; pass && i < fr.size(); ++i)
    if (fr[i].fraction != oracle[i]) pass = false;

  // avg and p95 against a sort-and-index recomputation, exact
  auto summary = band_summary(site_a, "TVWS", 470.0, 608.0, cfg);
  double sum = 0.0;
  auto sorted = oracle;
  for (double v : sorted) sum += v;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
  if (summary.avg_occupancy != sum / static_cast<double>(sorted.size())) pass = false;
  if (summary.p95_occupancy != sorted[rank - 1]) pass = false;

  // joint matrix vs per-cell recomputation, exact
  auto matrix = joint_availability(site_a, site_b, grid, cfg);
  auto occupied_cell = [&](const std::vector<Measurement>& ms, int c, std::int64_t slot) {
    for (const auto& m : ms) {
      if (static_cast<std::int64_t>(std::floor(m.timestamp_s)) != slot) continue;
      if (static_cast<int>((m.freq_mhz - 470.0) / 6.0) != c) continue;
      if (m.power_dbm > cfg.threshold_dbm) return true;
    }
    return false;
  };
  // index site_b once to keep the oracle O(cells); still independent logic
  std::map<std::pair<std::int64_t, int>, bool> idx_a, idx_b;
  for (const auto& m : site_a) {
    auto key = std::make_pair(static_cast<std::int64_t>(std::floor(m.timestamp_s)),
                              static_cast<int>((m.freq_mhz - 470.0) / 6.0));
    idx_a[key] = idx_a[key] || (m.power_dbm > cfg.threshold_dbm);
  }
  for (const auto& m : site_b) {
    auto key = std::make_pair(static_cast<std::int64_t>(std::floor(m.timestamp_s)),
                              static_cast<int>((m.freq_mhz - 470.0) / 6.0));
    idx_b[key] = idx_b[key] || (m.power_dbm > cfg.threshold_dbm);
  }
  (void)occupied_cell;
  for (int c = 0; pass && c < 23; ++c)
    for (std::size_t s = 0; pass && s < matrix.n_slots; ++s) {
      const auto key = std::make_pair(matrix.slot0 + static_cast<std::int64_t>(s), c);
      const bool oa = idx_a.count(key) && idx_a.at(key);
      const bool ob = idx_b.count(key) && idx_b.at(key);
      CellState expect = CellState::FREE_ONE;
      if (oa && ob) expect = CellState::OCCUPIED_BOTH;
      else if (!oa && !ob) expect = CellState::FREE_BOTH;
      if (matrix.at(c, s) != expect) pass = false;
    }

  const double secs = timer.seconds();
  report(1, "occupancy oracle equivalence", pass && secs < 10.0, secs);
}

// ---- criterion 2: kriging exactness + dense-solver oracle ----------------

std::vector<double> gauss_jordan(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && std::fabs(a[p][col]) < 1e-13) ++p;
    std::swap(a[p], a[col]);
    std::swap(b[p], b[col]);
    const double d = a[col][col];
    for (std::size_t c = 0; c < n; ++c) a[col][c] /= d;
    b[col] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

void criterion_kriging() {
  Timer timer;
  bool pass = true;
  std::mt19937_64 gen(2002);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VariogramModel vm{VariogramKind::exponential, 0.0, 8.0, 0.5, 0.0};

  for (int trial = 0; trial < 100 && pass; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(gen() % 49);
    std::vector<Sample2D> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back({u(gen), u(gen), -100.0 + 12.0 * u(gen)});
    const std::size_t pick = gen() % n;
    auto r = krige(s, vm, s[pick].x, s[pick].y);
    if (std::fabs(r.prediction - s[pick].z) > 1e-6) pass = false;
  }

  // 3-point case vs the independently coded elimination routine
  std::vector<Sample2D> s3 = {{0.0, 0.0, -95.0}, {0.7, 0.1, -102.0}, {-0.3, 0.6, -88.0}};
  VariogramModel vm3{VariogramKind::spherical, 0.2, 6.0, 0.8, 0.0};
  const double qx = 0.25, qy = -0.15;
  std::vector<std::vector<double>> a(4, std::vector<double>(4, 0.0));
  std::vector<double> b(4, 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      a[i][j] = (i == j) ? vm3.nugget
                         : vm3(std::hypot(s3[i].x - s3[j].x, s3[i].y - s3[j].y));
    a[i][3] = 1.0;
    a[3][i] = 1.0;
    b[i] = vm3(std::hypot(s3[i].x - qx, s3[i].y - qy));
  }
  b[3] = 1.0;
  auto w = gauss_jordan(a, b);
  double expect = 0.0;
  for (int i = 0; i < 3; ++i) expect += w[i] * s3[i].z;
  auto r3 = krige(s3, vm3, qx, qy);
  if (std::fabs(r3.prediction - expect) > 1e-8) pass = false;

  const double secs = timer.seconds();
  report(2, "kriging exactness and oracle match", pass && secs < 30.0, secs);
}

// ---- criterion 3: reverse-mode gradients vs central differences ----------

void criterion_gradients() {
  Timer timer;
  bool pass = true;
  std::mt19937_64 gen(3003);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto flatten = [](const MlpModel& m) {
    std::vector<double> v;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
      v.insert(v.end(), m.weights[l].begin(), m.weights[l].end());
      v.insert(v.end(), m.biases[l].begin(), m.biases[l].end());
    }
    return v;
  };
  auto unflatten = [](MlpModel& m, const std::vector<double>& v) {
    std::size_t k = 0;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
      for (double& w : m.weights[l]) w = v[k++];
      for (double& b : m.biases[l]) b = v[k++];
    }
  };

  for (int trial = 0; trial < 100 && pass; ++trial) {
    auto m = init_model({2, 5, 4, 1}, gen());
    std::vector<Sample2D> batch;
    for (int i = 0; i < 3; ++i) batch.push_back({u(gen), u(gen), u(gen)});
    auto analytic_g = param_gradients(m, batch);
    std::vector<double> analytic = flatten(m);
    {
      std::vector<double> v;
      for (std::size_t l = 0; l < analytic_g.weights.size(); ++l) {
        v.insert(v.end(), analytic_g.weights[l].begin(), analytic_g.weights[l].end());
        v.insert(v.end(), analytic_g.biases[l].begin(), analytic_g.biases[l].end());
      }
      analytic = v;
    }
    auto params = flatten(m);
    MlpModel work = m;
    for (std::size_t i = 0; i < params.size() && pass; ++i) {
      auto p = params;
      p[i] = params[i] + 1e-5;
      unflatten(work, p);
      const double up = data_loss(work, batch);
      p[i] = params[i] - 1e-5;
      unflatten(work, p);
      const double dn = data_loss(work, batch);
      const double fd = (up - dn) / 2e-5;
      const double scale = std::max({std::fabs(analytic[i]), std::fabs(fd), 1e-6});
      if (std::fabs(analytic[i] - fd) / scale > 1e-4) pass = false;
    }
  }

  const double secs = timer.seconds();
  report(3, "gradient correctness vs finite differences", pass && secs < 60.0, secs);
}

// ---- criterion 4: Laplacian stencil O(h^2) slope -------------------------

void criterion_laplacian_order() {
  Timer timer;
  // smooth fitted model: train a small net to a quartic-ish field
  std::vector<Sample2D> samples;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const double x = -1.0 + 0.25 * i;
      const double y = -1.0 + 0.25 * j;
      samples.push_back({x, y, std::sin(2.0 * x) * std::cos(1.5 * y)});
    }
  TrainConfig tc;
  tc.layer_dims = {2, 16, 16, 1};
  tc.epochs = 800;
  tc.seed = 12;
  auto model = train_mlp(samples, tc).model;

  const double x = 0.15, y = -0.2;
  const std::vector<double> hs = {0.32, 0.16, 0.08, 0.04};
  // Richardson extrapolant from the two finest stencils as the reference
  const double l_fine = input_laplacian(model, x, y, 0.02);
  const double l_finer = input_laplacian(model, x, y, 0.01);
  const double ref = (4.0 * l_finer - l_fine) / 3.0;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double h : hs) {
    const double err = std::fabs(input_laplacian(model, x, y, h) - ref);
    const double lx = std::log(h), ly = std::log(std::max(err, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(hs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass = std::fabs(slope - 2.0) <= 0.3;
  const double secs = timer.seconds();
  report(4, "laplacian stencil order (slope 2.0 +/- 0.3)", pass && secs < 30.0, secs);
  if (!pass) std::printf("       measured slope: %.3f\n", slope);
}

// ---- criterion 5: PINN beats NN on the harmonic benchmark ----------------

std::vector<Sample2D> harmonic_train(std::uint64_t seed, std::size_t n, double sigma) {
  UniformRng rng(seed);
  std::vector<Sample2D> s;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    double noise = 0.0;
    for (int k = 0; k < 12; ++k) noise += rng.uniform01();
    noise -= 6.0;
    s.push_back({x, y, 10.0 * (x * x - y * y) + sigma * noise});
  }
  return s;
}

void criterion_pinn_beats_nn() {
  Timer timer;
  std::vector<Sample2D> test_set;
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      const double x = -1.0 + 2.0 * (i + 0.5) / 24.0;
      const double y = -1.0 + 2.0 * (j + 0.5) / 24.0;
      test_set.push_back({x, y, 10.0 * (x * x - y * y)});
    }
  auto mse_of = [&](const MlpModel& m) {
    double s = 0.0;
    for (const auto& p : test_set) {
      const double e = forward(m, p.x, p.y) - p.z;
      s += e * e;
    }
    return s / static_cast<double>(test_set.size());
  };

  std::vector<double> ratios;
  bool pde_drop_ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto samples = harmonic_train(1000 + seed, 64, 0.1);
    TrainConfig tc;
    tc.layer_dims = {2, 32, 32, 32, 32, 1};
    tc.epochs = 2000;
    tc.learning_rate = 0.01;
    tc.init_scale = 1.5;  // enough initial curvature for a meaningful pde drop
    tc.seed = seed;
    auto nn = train_mlp(samples, tc);

    PinnConfig pc;
    pc.base = tc;
    pc.lambda_pde = 0.3;
    pc.n_collocation = 128;
    pc.collocation_seed = seed + 100;
    auto pinn = train_pinn(samples, pc);

    const double nn_mse = mse_of(nn.model);
    const double pinn_mse = mse_of(pinn.model);
    ratios.push_back(pinn_mse / nn_mse);
    if (pinn.pde_loss_trace.back() > 0.1 * pinn.pde_loss_trace.front())
      pde_drop_ok = false;
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[2];
  const bool pass = median <= 0.5 && pde_drop_ok;
  const double secs = timer.seconds();
  report(5, "PINN beats NN on harmonic benchmark", pass && secs < 300.0, secs);
  std::printf("       median PINN/NN test MSE ratio: %.4f, pde drop ok: %s\n", median,
              pde_drop_ok ? "yes" : "no");
}

// ---- criterion 6: lambda 0 identity --------------------------------------

void criterion_identity() {
  Timer timer;
  auto samples = harmonic_train(7, 32, 0.1);
  TrainConfig tc;
  tc.layer_dims = {2, 16, 16, 1};
  tc.epochs = 150;
  tc.seed = 21;
  PinnConfig pc;
  pc.base = tc;
  pc.lambda_pde = 0.0;
  pc.n_collocation = 64;
  auto nn = train_mlp(samples, tc);
  auto pinn = train_pinn(samples, pc);
  bool pass = nn.model.weights == pinn.model.weights && nn.model.biases == pinn.model.biases &&
              nn.model.z_mean == pinn.model.z_mean && nn.model.z_std == pinn.model.z_std;
  const double secs = timer.seconds();
  report(6, "lambda_pde = 0 reduces to train_mlp bit-exactly", pass && secs < 60.0, secs);
}

// ---- criterion 7: coverage ratio -----------------------------------------

void criterion_coverage_ratio() {
  Timer timer;
  TransmitterSpec lo;
  lo.eirp_dbm = 16.0;
  lo.rx_sensitivity_dbm = -90.0;
  lo.freq_mhz = 600.0;
  TransmitterSpec hi = lo;
  hi.eirp_dbm = 42.0;
  PathLossModel m;
  const double r_lo = coverage_radius_km(lo, m).radius_km;
  const double r_hi = coverage_radius_km(hi, m).radius_km;
  const double ratio = r_hi / r_lo;
  const double area_ratio = ratio * ratio;
  const bool pass = std::fabs(ratio - 19.95) <= 0.01 && std::fabs(area_ratio - 398.0) <= 1.0;
  const double secs = timer.seconds();
  report(7, "coverage ratio 19.95 +/- 0.01, area 398 +/- 1", pass && secs < 1.0, secs);
}

// ---- criterion 8: allocation safety --------------------------------------

void criterion_allocation_safety() {
  Timer timer;
  bool pass = true;
  std::mt19937_64 gen(8008);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  for (int scenario = 0; scenario < 1000 && pass; ++scenario) {
    ChannelGrid grid{470.0, 6.0, 8};
    std::vector<bool> free(8);
    for (std::size_t i = 0; i < 8; ++i) free[i] = (gen() % 4) != 0;
    std::vector<TransmitterSpec> pus;
    for (std::size_t i = 0; i < gen() % 3; ++i) {
      TransmitterSpec pu;
      pu.x = u(gen);
      pu.y = u(gen);
      pu.freq_mhz = 470.0 + 6.0 * static_cast<double>(gen() % 8) + 3.0;
      pu.interference_threshold_dbm = -118.0;
      pus.push_back(pu);
    }
    std::vector<AllocationRequest> requests;
    for (std::size_t i = 0; i < gen() % 6; ++i) {
      AllocationRequest r;
      r.requester_id = "su" + std::to_string(i);
      r.bandwidth_mhz = 6.0 * static_cast<double>(1 + gen() % 3);
      r.x = u(gen);
      r.y = u(gen);
      r.eirp_desired_dbm = 42.0;
      requests.push_back(r);
    }
    AllocConfig cfg;
    cfg.mode = AllocationMode::sensing_dynamic;
    cfg.km_per_unit = 10.0;
    auto plan = allocate(requests, grid, free, pus, cfg);

    for (const auto& g : plan.grants) {
      double gx = 0.0, gy = 0.0;
      for (const auto& r : requests)
        if (r.requester_id == g.requester_id) {
          gx = r.x;
          gy = r.y;
        }
      if (g.eirp_cap_dbm > cfg.sensing_eirp_cap_dbm) pass = false;
      for (const auto& pu : pus) {
        const int pu_ch = static_cast<int>((pu.freq_mhz - 470.0) / 6.0);
        if (pu_ch < g.first_channel || pu_ch >= g.first_channel + g.n_channels) continue;
        const double d = std::hypot(gx - pu.x, gy - pu.y) * cfg.km_per_unit;
        if (d <= 0.0) {
          pass = false;
          continue;
        }
        const double rx = g.eirp_cap_dbm -
                          (32.44 + 20.0 * std::log10(d) + 20.0 * std::log10(pu.freq_mhz));
        if (rx > pu.interference_threshold_dbm + 1e-6) pass = false;
      }
    }
    // sensing mode must leave no co-channel in-range pair unflagged; it
    // disallows them, so the conflict list must be empty
    if (!plan.conflicts.empty()) pass = false;

    cfg.mode = AllocationMode::database_conservative;
    auto db = allocate(requests, grid, free, pus, cfg);
    for (const auto& g : db.grants)
      if (g.eirp_cap_dbm != 16.0) pass = false;
  }

  // 3-request scenarios vs the exhaustive oracle live in test_allocation as
  // well; replicate a compact version here so the criterion stands alone
  for (int scenario = 0; scenario < 100 && pass; ++scenario) {
    ChannelGrid grid{470.0, 6.0, 6};
    std::vector<bool> free(6);
    for (std::size_t i = 0; i < 6; ++i) free[i] = (gen() % 3) != 0;
    std::vector<AllocationRequest> requests;
    for (int i = 0; i < 3; ++i) {
      AllocationRequest r;
      r.requester_id = "su" + std::to_string(i);
      r.bandwidth_mhz = 6.0 * static_cast<double>(1 + gen() % 2);
      r.x = 0.2 * u(gen);
      r.y = 0.2 * u(gen);
      r.eirp_desired_dbm = 42.0;
      requests.push_back(r);
    }
    AllocConfig cfg;
    cfg.mode = AllocationMode::sensing_dynamic;
    cfg.km_per_unit = 10.0;
    auto plan = allocate(requests, grid, free, {}, cfg);

    struct OG {
      bool granted = false;
      int first = -1, n = 0;
    };
    std::vector<OG> oracle(3);
    auto rx_at = [&](double eirp, double d, double f) {
      return eirp - (32.44 + 20.0 * std::log10(d) + 20.0 * std::log10(f));
    };
    for (int i = 0; i < 3; ++i) {
      const int needed = static_cast<int>(std::ceil(requests[i].bandwidth_mhz / 6.0));
      for (int first = 0; first + needed <= 6; ++first) {
        bool ok = true;
        for (int c = first; c < first + needed; ++c)
          if (!free[static_cast<std::size_t>(c)]) ok = false;
        for (int j = 0; ok && j < i; ++j) {
          if (!oracle[j].granted) continue;
          if (!(oracle[j].first < first + needed && first < oracle[j].first + oracle[j].n))
            continue;
          const double d = std::hypot(requests[i].x - requests[j].x,
                                      requests[i].y - requests[j].y) * cfg.km_per_unit;
          const double f_old = 470.0 + (oracle[j].first + 0.5 * oracle[j].n) * 6.0;
          const double f_new = 470.0 + (first + 0.5 * needed) * 6.0;
          if (d < 1e-9 || rx_at(42.0, d, f_old) > -118.0 + 1e-9 ||
              rx_at(42.0, d, f_new) > -118.0 + 1e-9)
            ok = false;
        }
        if (!ok) continue;
        oracle[i] = {true, first, needed};
        break;
      }
    }
    std::size_t gi = 0;
    for (int i = 0; i < 3; ++i) {
      if (!oracle[i].granted) continue;
      if (gi >= plan.grants.size() || plan.grants[gi].first_channel != oracle[i].first ||
          plan.grants[gi].n_channels != oracle[i].n)
        pass = false;
      ++gi;
    }
    if (gi != plan.grants.size()) pass = false;
  }

  const double secs = timer.seconds();
  report(8, "allocation safety over randomized scenarios", pass && secs < 60.0, secs);
}

// ---- criterion 9: CLI determinism ----------------------------------------

int run_cmd(const std::string& cmd) {
  const int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli_determinism(const std::string& binary, const fs::path& work) {
  Timer timer;
  bool pass = true;

  fs::remove_all(work);
  fs::create_directories(work);
  std::ofstream csv(work / "train.csv");
  csv << "timestamp_s,site_id,lat_deg,lon_deg,freq_mhz,power_dbm\n";
  UniformRng rng(55);
  for (int i = 0; i < 48; ++i) {
    const double lat = 42.0 + 0.1 * rng.uniform01();
    const double lon = -93.6 + 0.1 * rng.uniform01();
    char line[160];
    std::snprintf(line, sizeof(line), "%d.5,siteA,%.6f,%.6f,473,%.3f\n", i, lat, lon,
                  -110.0 + 25.0 * rng.uniform01());
    csv << line;
  }
  csv.close();
  std::ofstream req(work / "requests.csv");
  req << "requester_id,bandwidth_mhz,x,y,eirp_desired_dbm,priority\n";
  req << "su1,12,0.1,0.2,40,SU\nsu2,6,-0.4,0.3,42,SU\n";
  req.close();

  auto pipeline = [&](const fs::path& out) {
    const std::string in = (work / "train.csv").string();
    bool ok = true;
    ok &= run_cmd(binary + " occupancy --input " + in + " --out " +
                  (out / "occ").string()) == 0;
    ok &= run_cmd(binary + " fit --method kriging --input " + in + " --out " +
                  (out / "kriging").string() + " --set kriging.n_bins=6") == 0;
    ok &= run_cmd(binary + " fit --method nn --input " + in + " --out " +
                  (out / "nn").string() +
                  " --set train.epochs=60 --set train.layer_dims=2,16,16,1") == 0;
    ok &= run_cmd(binary + " fit --method pinn --input " + in + " --out " +
                  (out / "pinn").string() +
                  " --set train.epochs=60 --set train.layer_dims=2,16,16,1"
                  " --set pinn.n_collocation=64") == 0;
    ok &= run_cmd(binary + " map --model " + (out / "kriging" / "model.json").string() +
                  " --out " + (out / "map").string() +
                  " --set map.nx=16 --set map.ny=16") == 0;
    ok &= run_cmd(binary + " eval --model " + (out / "kriging" / "model.json").string() +
                  " --model " + (out / "nn" / "model.json").string() + " --model " +
                  (out / "pinn" / "model.json").string() + " --input " + in + " --out " +
                  (out / "eval").string()) == 0;
    ok &= run_cmd(binary + " allocate --requests " + (work / "requests.csv").string() +
                  " --out " + (out / "alloc").string() +
                  " --set alloc.mode=sensing_dynamic") == 0;
    return ok;
  };

  const fs::path run_a = work / "a";
  const fs::path run_b = work / "b";
  if (!pipeline(run_a)) pass = false;
  if (!pipeline(run_b)) pass = false;

  if (pass) {
    for (auto it = fs::recursive_directory_iterator(run_a);
         it != fs::recursive_directory_iterator(); ++it) {
      if (!it->is_regular_file()) continue;
      if (it->path().filename() == "run.log") continue;  // wall clock only
      const fs::path rel = fs::relative(it->path(), run_a);
      if (slurp(it->path()) != slurp(run_b / rel)) {
        std::printf("       differs: %s\n", rel.c_str());
        pass = false;
      }
    }
  }

  const double secs = timer.seconds();
  report(9, "CLI pipeline reruns are byte-identical", pass && secs < 120.0, secs);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <remtk-binary> <workdir>\n");
    return 1;
  }
  criterion_occupancy();
  criterion_kriging();
  criterion_gradients();
  criterion_laplacian_order();
  criterion_pinn_beats_nn();
  criterion_identity();
  criterion_coverage_ratio();
  criterion_allocation_safety();
  criterion_cli_determinism(argv[1], argv[2]);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
