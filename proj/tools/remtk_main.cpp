// remtk: spectrum measurement analytics, radio environment map surrogates,
// and white-space channel allocation. One binary, subcommand style.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "remtk/allocation.hpp"
#include "remtk/errors.hpp"
#include "remtk/geostat.hpp"
#include "remtk/ingest.hpp"
#include "remtk/neural.hpp"
#include "remtk/occupancy.hpp"
#include "remtk/pinn.hpp"
#include "remtk/rem.hpp"
#include "remtk/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace remtk;

namespace {

/// Flat key-value run configuration. Every key must be declared with a
/// default before it can be set; unknown keys are rejected.
class KvConfig {
 public:
  void declare(const std::string& key, const std::string& default_value) {
    values_[key] = default_value;
  }

  void set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError("unknown config key '" + key + "'");
    it->second = value;
  }

  void set_pair(const std::string& pair) {
    auto eq = pair.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config override must be key=value, got '" + pair + "'");
    set(trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
  }

  void load_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto eq = t.find('=');
      if (eq == std::string::npos)
        throw ValidationError(path.string() + " line " + std::to_string(line_no) +
                              ": expected key = value");
      set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
  }

  const std::string& str(const std::string& key) const { return values_.at(key); }

  double num(const std::string& key) const {
    const std::string& s = str(key);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty())
      throw ValidationError("config key '" + key + "': not a number: '" + s + "'");
    return v;
  }

  long long integer(const std::string& key) const {
    const double v = num(key);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
      throw ValidationError("config key '" + key + "': expected an integer");
    return i;
  }

  std::vector<int> int_list(const std::string& key) const {
    std::vector<int> out;
    std::stringstream ss(str(key));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      out.push_back(std::stoi(tok));
    }
    return out;
  }

  /// Sorted key=value lines; written next to the outputs of every run.
  std::string echo() const {
    std::string out;
    for (const auto& [k, v] : values_) {
      out += k;
      out += " = ";
      out += v;
      out += '\n';
    }
    return out;
  }

  json echo_json() const {
    json j = json::object();
    for (const auto& [k, v] : values_) j[k] = v;
    return j;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> values_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write output file " + path.string());
  out << content;
}

void declare_grid_keys(KvConfig& cfg) {
  cfg.declare("grid.start_mhz", "470");
  cfg.declare("grid.channel_width_mhz", "6");
  cfg.declare("grid.n_channels", "23");
}

ChannelGrid grid_from(const KvConfig& cfg) {
  ChannelGrid g;
  g.start_mhz = cfg.num("grid.start_mhz");
  g.channel_width_mhz = cfg.num("grid.channel_width_mhz");
  g.n_channels = static_cast<int>(cfg.integer("grid.n_channels"));
  if (!(g.channel_width_mhz > 0.0) || g.n_channels < 1)
    throw ValidationError("invalid channel grid configuration");
  return g;
}

void apply_seed_override(KvConfig& cfg, const std::string& key) {
  if (const char* env = std::getenv("REMTK_SEED")) {
    cfg.set(key, env);
    cfg.declare("seed_override_env", env);
  }
}

/// Config echo + a separate wall-clock run log; only the run log may differ
/// between identical reruns.
struct RunContext {
  fs::path outdir;
  KvConfig cfg;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void finish(const std::string& subcommand) {
    write_file(outdir / "config_echo.txt", "subcommand = " + subcommand + "\n" + cfg.echo());
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    write_file(outdir / "run.log",
               subcommand + " completed in " + std::to_string(ms) + " ms\n");
  }
};

json band_summary_json(const BandSummary& s) {
  char line[160];
  std::snprintf(line, sizeof(line), "%s %g-%g: avg %.1f%%, p95 %.1f%%",
                s.band_name.c_str(), s.span_lo_mhz, s.span_hi_mhz,
                100.0 * s.avg_occupancy, 100.0 * s.p95_occupancy);
  return {{"band_name", s.band_name},
          {"span_mhz", {s.span_lo_mhz, s.span_hi_mhz}},
          {"avg_occupancy", s.avg_occupancy},
          {"p95_occupancy", s.p95_occupancy},
          {"n_slots", s.n_slots},
          {"has_data", s.has_data},
          {"summary_line", s.has_data ? line : "no data"}};
}

int cmd_occupancy(RunContext& ctx, const fs::path& input_a,
                  const std::optional<fs::path>& input_b) {
  auto& cfg = ctx.cfg;
  const auto grid = grid_from(cfg);
  OccupancyConfig oc;
  oc.threshold_dbm = cfg.num("occupancy.threshold_dbm");
  oc.slot_s = cfg.num("occupancy.slot_s");
  oc.window_s = cfg.num("occupancy.window_s");
  if (!(oc.slot_s > 0.0) || oc.window_s < oc.slot_s)
    throw ValidationError("occupancy config requires slot_s > 0 and window_s >= slot_s");

  auto site_a = parse_measurements(read_file(input_a));
  if (site_a.empty()) throw InsufficientDataError("no data in " + input_a.string());

  AvailabilityMatrix matrix;
  std::vector<Measurement> all = site_a;
  if (input_b) {
    auto site_b = parse_measurements(read_file(*input_b));
    if (site_b.empty()) throw InsufficientDataError("no data in " + input_b->string());
    matrix = joint_availability(site_a, site_b, grid, oc);
    all.insert(all.end(), site_b.begin(), site_b.end());
  } else {
    matrix = availability_matrix(site_a, grid, oc);
  }

  const auto band = band_summary(all, cfg.str("band.name"), cfg.num("band.lo_mhz"),
                                 cfg.num("band.hi_mhz"), oc);
  if (!band.has_data) throw InsufficientDataError("no usable slots in the requested band");

  json report = {
      {"definition",
       "occupancy = per-slot fraction of sampled channels above threshold, "
       "aggregated over slots; p95 is the nearest-rank 95th percentile"},
      {"threshold_dbm", oc.threshold_dbm},
      {"bands", json::array({band_summary_json(band)})},
      {"coverage_gaps", matrix.coverage_gaps},
      {"matrix", {{"n_channels", grid.n_channels}, {"n_slots", matrix.n_slots},
                  {"two_site", matrix.two_site}}}};
  write_file(ctx.outdir / "occupancy_report.json", report.dump(2) + "\n");
  write_file(ctx.outdir / "availability.csv", availability_csv(matrix));

  json legend;
  if (matrix.two_site) {
    legend = {{"0", "FREE_BOTH"}, {"1", "FREE_ONE"}, {"2", "OCCUPIED_BOTH"},
              {"rows", "channels, lowest first"}, {"columns", "time slots"}};
  } else {
    legend = {{"0", "FREE"}, {"2", "OCCUPIED"},
              {"rows", "channels, lowest first"}, {"columns", "time slots"}};
  }
  write_file(ctx.outdir / "availability_legend.json", legend.dump(2) + "\n");
  ctx.finish("occupancy");
  return 0;
}

std::pair<std::vector<Sample2D>, CoordFrame> load_samples(const fs::path& input) {
  auto ms = parse_measurements(read_file(input));
  if (ms.size() < 2)
    throw InsufficientDataError("need at least 2 measurements in " + input.string());
  const CoordFrame frame = fit_frame(ms);
  std::vector<Sample2D> samples;
  samples.reserve(ms.size());
  for (const auto& m : ms) {
    Sample2D s;
    frame.normalize(m.lat_deg, m.lon_deg, s.x, s.y);
    s.z = m.power_dbm;
    samples.push_back(s);
  }
  return {samples, frame};
}

std::vector<int> parse_layer_dims(const KvConfig& cfg) {
  auto dims = cfg.int_list("train.layer_dims");
  if (dims.empty()) throw ValidationError("train.layer_dims must not be empty");
  return dims;
}

TrainConfig train_config_from(const KvConfig& cfg) {
  TrainConfig tc;
  tc.learning_rate = cfg.num("train.learning_rate");
  tc.epochs = static_cast<int>(cfg.integer("train.epochs"));
  tc.seed = static_cast<std::uint64_t>(cfg.integer("train.seed"));
  tc.init_scale = cfg.num("train.init_scale");
  tc.layer_dims = parse_layer_dims(cfg);
  return tc;
}

int cmd_fit(RunContext& ctx, const std::string& method, const fs::path& input) {
  auto& cfg = ctx.cfg;
  auto [samples, frame] = load_samples(input);

  json report;
  json ckpt;
  if (method == "kriging") {
    const auto kind = variogram_kind_from_string(cfg.str("kriging.kind"));
    const auto ev = empirical_variogram(samples,
                                        static_cast<std::size_t>(cfg.integer("kriging.n_bins")),
                                        cfg.num("kriging.max_lag"));
    const auto vm = fit_variogram(ev, kind);
    KrigingSurrogate surrogate(samples, vm);
    ckpt = checkpoint_json(surrogate, frame);
    report = {{"method", "kriging"},
              {"variogram", ckpt.at("variogram")},
              {"empirical", {{"bin_centers", ev.bin_centers}, {"gamma", ev.gamma},
                             {"counts", ev.counts}, {"max_lag", ev.max_lag}}},
              {"n_samples", samples.size()},
              {"config", cfg.echo_json()}};
  } else if (method == "nn" || method == "pinn") {
    const TrainConfig tc = train_config_from(cfg);
    TrainResult result;
    if (method == "nn") {
      result = train_mlp(samples, tc);
    } else {
      PinnConfig pc;
      pc.base = tc;
      pc.lambda_pde = cfg.num("pinn.lambda_pde");
      pc.n_collocation = static_cast<int>(cfg.integer("pinn.n_collocation"));
      pc.collocation_seed = static_cast<std::uint64_t>(cfg.integer("pinn.collocation_seed"));
      pc.stencil_h = cfg.num("pinn.stencil_h");
      result = train_pinn(samples, pc);
    }
    MlpSurrogate surrogate(result.model, method);
    ckpt = checkpoint_json(surrogate, frame, cfg.echo_json());
    report = {{"method", method},
              {"n_samples", samples.size()},
              {"loss_trace", result.loss_trace},
              {"data_loss_trace", result.data_loss_trace},
              {"config", cfg.echo_json()}};
    if (!result.pde_loss_trace.empty()) report["pde_loss_trace"] = result.pde_loss_trace;
    report["final_loss"] = result.loss_trace.back();
  } else {
    throw ValidationError("unknown fit method '" + method + "'");
  }

  write_file(ctx.outdir / "model.json", ckpt.dump(2) + "\n");
  write_file(ctx.outdir / "training_report.json", report.dump(2) + "\n");
  ctx.finish("fit");
  return 0;
}

int cmd_map(RunContext& ctx, const fs::path& model_path) {
  auto& cfg = ctx.cfg;
  const json ckpt = json::parse(read_file(model_path));
  auto surrogate = surrogate_from_json(ckpt, nullptr);

  MapGrid grid;
  grid.x_min = cfg.num("map.x_min");
  grid.x_max = cfg.num("map.x_max");
  grid.y_min = cfg.num("map.y_min");
  grid.y_max = cfg.num("map.y_max");
  grid.nx = static_cast<int>(cfg.integer("map.nx"));
  grid.ny = static_cast<int>(cfg.integer("map.ny"));

  const Rem rem = predict_map(*surrogate, grid);
  write_file(ctx.outdir / "rem.csv", rem_csv(rem));
  json sidecar = {{"bbox", {grid.x_min, grid.x_max, grid.y_min, grid.y_max}},
                  {"nx", grid.nx},
                  {"ny", grid.ny},
                  {"model_tag", rem.model_tag},
                  {"orientation", "row 0 = minimum y; values at cell centers"},
                  {"units", "dBm"}};
  write_file(ctx.outdir / "rem.json", sidecar.dump(2) + "\n");
  ctx.finish("map");
  return 0;
}

int cmd_eval(RunContext& ctx, const std::vector<fs::path>& model_paths,
             const fs::path& input) {
  auto ms = parse_measurements(read_file(input));
  if (ms.empty()) throw InsufficientDataError("no held-out data in " + input.string());

  struct Entry {
    std::string tag;
    fs::path path;
    MseResult mse;
  };
  std::vector<Entry> entries;
  for (const auto& path : model_paths) {
    CoordFrame frame;
    auto surrogate = surrogate_from_json(json::parse(read_file(path)), &frame);
    std::vector<Sample2D> held_out;
    for (const auto& m : ms) {
      Sample2D s;
      frame.normalize(m.lat_deg, m.lon_deg, s.x, s.y);
      s.z = m.power_dbm;
      held_out.push_back(s);
    }
    entries.push_back({surrogate->tag(), path, test_mse(*surrogate, held_out)});
  }

  // kriging, nn, pinn ordering; anything else after, by tag
  auto rank = [](const std::string& tag) {
    if (tag == "kriging") return 0;
    if (tag == "nn") return 1;
    if (tag == "pinn") return 2;
    return 3;
  };
  std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    return rank(a.tag) != rank(b.tag) ? rank(a.tag) < rank(b.tag) : a.tag < b.tag;
  });

  json models = json::array();
  for (const auto& e : entries)
    models.push_back({{"model", e.tag},
                      {"checkpoint", e.path.filename().string()},
                      {"mse_dbm2", e.mse.raw_dbm2},
                      {"mse_standardized", e.mse.standardized},
                      {"n", e.mse.n}});
  json report = {{"held_out", input.string()}, {"models", models}};
  write_file(ctx.outdir / "mse_report.json", report.dump(2) + "\n");
  ctx.finish("eval");
  return 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::vector<std::vector<std::string>> parse_table(const std::string& text,
                                                  const std::string& expected_header,
                                                  const std::string& what) {
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != expected_header)
        throw ValidationError(what + ": expected header '" + expected_header + "'");
      header_seen = true;
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != split_csv_line(expected_header).size())
      throw ValidationError(what + " line " + std::to_string(line_no) +
                            ": wrong field count");
    rows.push_back(std::move(fields));
  }
  if (!header_seen) throw ValidationError(what + ": missing header");
  return rows;
}

int cmd_allocate(RunContext& ctx, const fs::path& requests_path,
                 const std::optional<fs::path>& pus_path,
                 const std::optional<fs::path>& availability_path) {
  auto& cfg = ctx.cfg;
  const auto grid = grid_from(cfg);

  std::vector<AllocationRequest> requests;
  for (const auto& row : parse_table(
           read_file(requests_path),
           "requester_id,bandwidth_mhz,x,y,eirp_desired_dbm,priority", "requests")) {
    AllocationRequest r;
    r.requester_id = row[0];
    r.bandwidth_mhz = std::stod(row[1]);
    r.x = std::stod(row[2]);
    r.y = std::stod(row[3]);
    r.eirp_desired_dbm = std::stod(row[4]);
    if (row[5] == "PU") r.priority = Priority::PU;
    else if (row[5] == "SU") r.priority = Priority::SU;
    else throw ValidationError("requests: priority must be PU or SU, got '" + row[5] + "'");
    requests.push_back(std::move(r));
  }

  std::vector<TransmitterSpec> pus;
  if (pus_path) {
    for (const auto& row : parse_table(
             read_file(*pus_path),
             "x,y,eirp_dbm,freq_mhz,rx_sensitivity_dbm,interference_threshold_dbm", "pus")) {
      TransmitterSpec t;
      t.x = std::stod(row[0]);
      t.y = std::stod(row[1]);
      t.eirp_dbm = std::stod(row[2]);
      t.freq_mhz = std::stod(row[3]);
      t.rx_sensitivity_dbm = std::stod(row[4]);
      t.interference_threshold_dbm = std::stod(row[5]);
      pus.push_back(t);
    }
  }

  std::vector<bool> channel_free(static_cast<std::size_t>(grid.n_channels), true);
  if (availability_path) {
    std::istringstream in(read_file(*availability_path));
    std::string line;
    int c = 0;
    while (std::getline(in, line) && c < grid.n_channels) {
      for (const auto& cell : split_csv_line(line))
        if (cell != "0") {
          channel_free[static_cast<std::size_t>(c)] = false;
          break;
        }
      ++c;
    }
    if (c != grid.n_channels)
      throw ValidationError("availability matrix has " + std::to_string(c) +
                            " rows, expected " + std::to_string(grid.n_channels));
  } else if (!cfg.str("alloc.db_channels").empty()) {
    channel_free.assign(static_cast<std::size_t>(grid.n_channels), false);
    for (int idx : cfg.int_list("alloc.db_channels")) {
      if (idx < 0 || idx >= grid.n_channels)
        throw ValidationError("alloc.db_channels index out of range: " + std::to_string(idx));
      channel_free[static_cast<std::size_t>(idx)] = true;
    }
  }

  AllocConfig ac;
  const std::string mode = cfg.str("alloc.mode");
  if (mode == "database_conservative") ac.mode = AllocationMode::database_conservative;
  else if (mode == "sensing_dynamic") ac.mode = AllocationMode::sensing_dynamic;
  else throw ValidationError("alloc.mode must be database_conservative or sensing_dynamic");
  ac.km_per_unit = cfg.num("alloc.km_per_unit");
  ac.database_eirp_cap_dbm = cfg.num("alloc.database_eirp_cap_dbm");
  ac.sensing_eirp_cap_dbm = cfg.num("alloc.sensing_eirp_cap_dbm");
  ac.su_interference_threshold_dbm = cfg.num("alloc.su_threshold_dbm");
  const std::string plk = cfg.str("pathloss.kind");
  if (plk == "free_space") ac.model.kind = PathLossKind::free_space;
  else if (plk == "log_distance") ac.model.kind = PathLossKind::log_distance;
  else throw ValidationError("pathloss.kind must be free_space or log_distance");
  ac.model.exponent = cfg.num("pathloss.exponent");
  ac.model.d0_km = cfg.num("pathloss.d0_km");
  ac.model.pl0_db = cfg.num("pathloss.pl0_db");

  const auto plan = allocate(requests, grid, channel_free, pus, ac);

  json grants = json::array();
  for (const auto& g : plan.grants)
    grants.push_back({{"requester_id", g.requester_id},
                      {"first_channel", g.first_channel},
                      {"n_channels", g.n_channels},
                      {"eirp_cap_dbm", g.eirp_cap_dbm},
                      {"priority", g.priority == Priority::PU ? "PU" : "SU"}});
  json rejections = json::array();
  for (const auto& r : plan.rejections)
    rejections.push_back({{"requester_id", r.requester_id},
                          {"reason", to_string(r.reason)}});
  json conflicts = json::array();
  for (const auto& c : plan.conflicts)
    conflicts.push_back({{"requester_a", c.requester_a},
                         {"requester_b", c.requester_b},
                         {"channel", c.channel},
                         {"separation_km", c.separation_km}});
  json report = {{"mode", mode},
                 {"grants", grants},
                 {"rejections", rejections},
                 {"conflicts", conflicts}};
  write_file(ctx.outdir / "plan.json", report.dump(2) + "\n");
  ctx.finish("allocate");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrum analytics, REM surrogates, and white-space allocation"};
  app.require_subcommand(1);

  std::string outdir, config_file;
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", outdir, "output directory")->required();
    sub->add_option("--config", config_file, "key = value config file");
    sub->add_option("--set", overrides, "config override key=value (repeatable)");
  };

  auto* occ = app.add_subcommand("occupancy", "band summaries and availability matrix");
  std::string occ_input, occ_input_b;
  occ->add_option("--input", occ_input, "site A measurement CSV")->required();
  occ->add_option("--input-b", occ_input_b, "site B measurement CSV (two-site mode)");
  add_common(occ);

  auto* fit = app.add_subcommand("fit", "fit a kriging, nn, or pinn surrogate");
  std::string fit_method, fit_input;
  fit->add_option("--method", fit_method, "kriging | nn | pinn")->required();
  fit->add_option("--input", fit_input, "training measurement CSV")->required();
  add_common(fit);

  auto* mp = app.add_subcommand("map", "predict a radio environment map");
  std::string map_model;
  mp->add_option("--model", map_model, "model checkpoint")->required();
  add_common(mp);

  auto* ev = app.add_subcommand("eval", "held-out MSE for one or more models");
  std::vector<std::string> eval_models;
  std::string eval_input;
  ev->add_option("--model", eval_models, "model checkpoint (repeatable)")->required();
  ev->add_option("--input", eval_input, "held-out measurement CSV")->required();
  add_common(ev);

  auto* al = app.add_subcommand("allocate", "white-space channel allocation");
  std::string al_requests, al_pus, al_avail;
  al->add_option("--requests", al_requests, "allocation request CSV")->required();
  al->add_option("--pus", al_pus, "protected primary users CSV");
  al->add_option("--availability", al_avail, "availability matrix CSV");
  add_common(al);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunContext ctx;
  auto& cfg = ctx.cfg;

  try {
    if (occ->parsed()) {
      declare_grid_keys(cfg);
      cfg.declare("occupancy.threshold_dbm", "-108");
      cfg.declare("occupancy.slot_s", "1");
      cfg.declare("occupancy.window_s", "900");
      cfg.declare("band.name", "TVWS");
      cfg.declare("band.lo_mhz", "470");
      cfg.declare("band.hi_mhz", "608");
    } else if (fit->parsed()) {
      cfg.declare("train.learning_rate", "0.01");
      cfg.declare("train.epochs", "1000");
      cfg.declare("train.seed", "0");
      cfg.declare("train.init_scale", "1");
      cfg.declare("train.layer_dims", "2,64,64,64,64,1");
      cfg.declare("pinn.lambda_pde", "1");
      cfg.declare("pinn.n_collocation", "1024");
      cfg.declare("pinn.collocation_seed", "1");
      cfg.declare("pinn.stencil_h", "1e-3");
      cfg.declare("kriging.kind", "exponential");
      cfg.declare("kriging.n_bins", "12");
      cfg.declare("kriging.max_lag", "0");
    } else if (mp->parsed()) {
      cfg.declare("map.x_min", "-1");
      cfg.declare("map.x_max", "1");
      cfg.declare("map.y_min", "-1");
      cfg.declare("map.y_max", "1");
      cfg.declare("map.nx", "64");
      cfg.declare("map.ny", "64");
    } else if (ev->parsed()) {
      // no keys beyond the common set
    } else if (al->parsed()) {
      declare_grid_keys(cfg);
      cfg.declare("alloc.mode", "database_conservative");
      cfg.declare("alloc.km_per_unit", "1");
      cfg.declare("alloc.database_eirp_cap_dbm", "16");
      cfg.declare("alloc.sensing_eirp_cap_dbm", "42");
      cfg.declare("alloc.su_threshold_dbm", "-118");
      cfg.declare("alloc.db_channels", "");
      cfg.declare("pathloss.kind", "free_space");
      cfg.declare("pathloss.exponent", "2");
      cfg.declare("pathloss.d0_km", "1");
      cfg.declare("pathloss.pl0_db", "88");
    }

    if (!config_file.empty()) cfg.load_file(config_file);
    for (const auto& o : overrides) cfg.set_pair(o);
    if (fit->parsed()) apply_seed_override(cfg, "train.seed");

    ctx.outdir = outdir;
    fs::create_directories(ctx.outdir);

    if (occ->parsed()) {
      std::optional<fs::path> b;
      if (!occ_input_b.empty()) b = occ_input_b;
      return cmd_occupancy(ctx, occ_input, b);
    }
    if (fit->parsed()) return cmd_fit(ctx, fit_method, fit_input);
    if (mp->parsed()) return cmd_map(ctx, map_model);
    if (ev->parsed()) {
      std::vector<fs::path> paths(eval_models.begin(), eval_models.end());
      return cmd_eval(ctx, paths, eval_input);
    }
    if (al->parsed()) {
      std::optional<fs::path> pus, avail;
      if (!al_pus.empty()) pus = al_pus;
      if (!al_avail.empty()) avail = al_avail;
      return cmd_allocate(ctx, al_requests, pus, avail);
    }
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
