#include "remtk/geostat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "remtk/errors.hpp"

namespace remtk {

namespace {

double sqr(double v) { return v * v; }

double dist(const Sample2D& a, const Sample2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Dense Gaussian elimination with partial pivoting; a is n x n row-major,
/// b is the right-hand side, overwritten with the solution.
void solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::fabs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double v = std::fabs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < 1e-14)
      throw NumericError("kriging system is singular at pivot " + std::to_string(col));
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    const double d = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
    b[r] = s / a[r * n + r];
  }
}

}  // namespace

std::string to_string(VariogramKind kind) {
  switch (kind) {
    case VariogramKind::exponential: return "exponential";
    case VariogramKind::spherical: return "spherical";
    case VariogramKind::gaussian: return "gaussian";
  }
  return "exponential";
}

VariogramKind variogram_kind_from_string(const std::string& s) {
  if (s == "exponential") return VariogramKind::exponential;
  if (s == "spherical") return VariogramKind::spherical;
  if (s == "gaussian") return VariogramKind::gaussian;
  throw ValidationError("unknown variogram kind '" + s + "'");
}

double VariogramModel::operator()(double h) const {
  if (h <= 0.0) return nugget;
  switch (kind) {
    case VariogramKind::exponential:
      return nugget + sill * (1.0 - std::exp(-h / range_len));
    case VariogramKind::gaussian:
      return nugget + sill * (1.0 - std::exp(-sqr(h / range_len)));
    case VariogramKind::spherical: {
      if (h >= range_len) return nugget + sill;
      const double r = h / range_len;
      return nugget + sill * (1.5 * r - 0.5 * r * r * r);
    }
  }
  return nugget;
}

EmpiricalVariogram empirical_variogram(const std::vector<Sample2D>& samples,
                                       std::size_t n_bins, double max_lag) {
  if (samples.size() < 2)
    throw InsufficientDataError("empirical_variogram needs at least 2 samples");
  if (n_bins < 1) throw ValidationError("n_bins must be >= 1");

  if (max_lag <= 0.0) {
    double dmax = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i + 1; j < samples.size(); ++j)
        dmax = std::max(dmax, dist(samples[i], samples[j]));
    max_lag = 0.5 * dmax;
    if (max_lag <= 0.0)
      throw InsufficientDataError("empirical_variogram: all samples co-located");
  }

  EmpiricalVariogram ev;
  ev.max_lag = max_lag;
  const double width = max_lag / static_cast<double>(n_bins);
  ev.bin_centers.resize(n_bins);
  ev.gamma.assign(n_bins, 0.0);
  ev.counts.assign(n_bins, 0);
  for (std::size_t b = 0; b < n_bins; ++b)
    ev.bin_centers[b] = (static_cast<double>(b) + 0.5) * width;

  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double h = dist(samples[i], samples[j]);
      if (h > max_lag) continue;
      std::size_t b = std::min(static_cast<std::size_t>(h / width), n_bins - 1);
      ev.gamma[b] += sqr(samples[i].z - samples[j].z);
      ev.counts[b] += 1;
    }
  }
  for (std::size_t b = 0; b < n_bins; ++b)
    if (ev.counts[b] > 0) ev.gamma[b] /= 2.0 * static_cast<double>(ev.counts[b]);
  return ev;
}

VariogramModel fit_variogram(const EmpiricalVariogram& ev, VariogramKind kind) {
  std::vector<std::size_t> nonempty;
  for (std::size_t b = 0; b < ev.counts.size(); ++b)
    if (ev.counts[b] > 0) nonempty.push_back(b);
  if (nonempty.size() < 3)
    throw InsufficientDataError("fit_variogram needs at least 3 nonempty bins, got " +
                                std::to_string(nonempty.size()));

  double gmax = 0.0;
  for (std::size_t b : nonempty) gmax = std::max(gmax, ev.gamma[b]);
  if (gmax <= 0.0) gmax = 1.0;
  const double hmin = ev.bin_centers[nonempty.front()];
  const double hmax = ev.bin_centers[nonempty.back()];

  auto objective = [&](double nugget, double sill, double range_len) {
    VariogramModel m{kind, nugget, sill, range_len, 0.0};
    double s = 0.0;
    for (std::size_t b : nonempty)
      s += static_cast<double>(ev.counts[b]) * sqr(m(ev.bin_centers[b]) - ev.gamma[b]);
    return s;
  };

  auto log_space = [](double lo, double hi, int k, int n) {
    return lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
  };

  // Coarse 16x16x16 grid; nugget candidate 0 replaces the lowest log point.
  double best_n = 0.0, best_s = gmax, best_r = hmax, best_obj =
      std::numeric_limits<double>::infinity();
  for (int in = 0; in < 16; ++in) {
    const double n = (in == 0) ? 0.0 : log_space(gmax * 1e-3, gmax, in, 16);
    for (int is = 0; is < 16; ++is) {
      const double s = log_space(gmax * 1e-2, 2.0 * gmax, is, 16);
      for (int ir = 0; ir < 16; ++ir) {
        const double r = log_space(std::max(hmin, 1e-6), 2.0 * std::max(hmax, hmin), ir, 16);
        const double o = objective(n, s, r);
        if (o < best_obj) {
          best_obj = o;
          best_n = n;
          best_s = s;
          best_r = r;
        }
      }
    }
  }

  // 100 coordinate-descent refinement steps with shrinking moves.
  double add_step = 0.25 * gmax;
  double mul_step = 1.5;
  for (int iter = 0; iter < 100; ++iter) {
    bool improved = false;
    for (double cand : {best_n + add_step, std::max(0.0, best_n - add_step)}) {
      const double o = objective(cand, best_s, best_r);
      if (o < best_obj) {
        best_obj = o;
        best_n = cand;
        improved = true;
      }
    }
    for (double cand : {best_s * mul_step, best_s / mul_step}) {
      const double o = objective(best_n, cand, best_r);
      if (o < best_obj) {
        best_obj = o;
        best_s = cand;
        improved = true;
      }
    }
    for (double cand : {best_r * mul_step, best_r / mul_step}) {
      const double o = objective(best_n, best_s, cand);
      if (o < best_obj) {
        best_obj = o;
        best_r = cand;
        improved = true;
      }
    }
    if (!improved) {
      add_step *= 0.5;
      mul_step = std::sqrt(mul_step);
      if (add_step < 1e-12 * gmax && mul_step < 1.0 + 1e-12) break;
    }
  }

  return {kind, best_n, best_s, best_r, best_obj};
}

KrigeResult krige(const std::vector<Sample2D>& samples, const VariogramModel& model,
                  double qx, double qy) {
  if (samples.empty()) throw InsufficientDataError("krige needs at least 1 sample");

  // Collapse duplicate locations (lag below 1e-12) by averaging their values.
  std::vector<Sample2D> pts;
  std::vector<std::size_t> multiplicity;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool merged = false;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (dist(pts[k], samples[i]) < 1e-12) {
        if (model.nugget <= 0.0)
          throw NumericError("krige: duplicate sample locations with zero nugget (indices " +
                             std::to_string(k) + " and " + std::to_string(i) + ")");
        const double w = static_cast<double>(multiplicity[k]);
        pts[k].z = (pts[k].z * w + samples[i].z) / (w + 1.0);
        multiplicity[k] += 1;
        merged = true;
        break;
      }
    }
    if (!merged) {
      pts.push_back(samples[i]);
      multiplicity.push_back(1);
    }
  }

  const std::size_t n = pts.size();
  const std::size_t m = n + 1;
  std::vector<double> a(m * m, 0.0), b(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      a[i * m + j] = (i == j) ? model.nugget : model(dist(pts[i], pts[j]));
    a[i * m + n] = 1.0;
    a[n * m + i] = 1.0;
    b[i] = model(std::hypot(pts[i].x - qx, pts[i].y - qy));
  }
  a[n * m + n] = 0.0;
  b[n] = 1.0;

  std::vector<double> rhs = b;
  solve_dense(a, rhs, m);

  KrigeResult res;
  res.weights.assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n));
  const double mu = rhs[n];
  double pred = 0.0, var = mu;
  for (std::size_t i = 0; i < n; ++i) {
    pred += res.weights[i] * pts[i].z;
    var += res.weights[i] * b[i];
  }
  res.prediction = pred;
  res.variance = std::max(0.0, var);
  return res;
}

}  // namespace remtk
