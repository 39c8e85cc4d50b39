#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "remtk/geostat.hpp"
#include "remtk/ingest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_binary;
fs::path g_work;

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

void write(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << content;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kHeader = "timestamp_s,site_id,lat_deg,lon_deg,freq_mhz,power_dbm\n";

std::string fixture_measurements() {
  std::string s = kHeader;
  for (int slot = 0; slot < 10; ++slot)
    for (int c = 0; c < 4; ++c) {
      const double f = 470.0 + 6.0 * c + 3.0;
      const double p = (c == 0) ? -70.0 : -150.0;
      s += std::to_string(slot) + ".5,siteA," + std::to_string(42.0 + 0.01 * slot) + "," +
           std::to_string(-93.6 + 0.01 * c) + "," + std::to_string(f) + "," +
           std::to_string(p) + "\n";
    }
  return s;
}

}  // namespace

TEST_CASE("missing input file exits 2 with the path in the message") {
  CHECK(run("occupancy --input " + (g_work / "nope.csv").string() + " --out " +
            (g_work / "o1").string()) == 2);
}

TEST_CASE("empty but valid file exits 3") {
  write(g_work / "empty.csv", kHeader);
  CHECK(run("occupancy --input " + (g_work / "empty.csv").string() + " --out " +
            (g_work / "o2").string()) == 3);
}

TEST_CASE("unknown config key exits 2") {
  write(g_work / "m.csv", fixture_measurements());
  CHECK(run("occupancy --input " + (g_work / "m.csv").string() + " --out " +
            (g_work / "o3").string() + " --set bogus.key=1") == 2);
}

TEST_CASE("occupancy writes report, matrix, legend, and config echo") {
  write(g_work / "m.csv", fixture_measurements());
  const fs::path out = g_work / "occ";
  CHECK(run("occupancy --input " + (g_work / "m.csv").string() + " --out " + out.string() +
            " --set grid.n_channels=4") == 0);
  auto report = json::parse(slurp(out / "occupancy_report.json"));
  CHECK(report.at("bands").at(0).at("avg_occupancy").get<double>() ==
        doctest::Approx(0.25));
  CHECK(fs::exists(out / "availability.csv"));
  CHECK(fs::exists(out / "availability_legend.json"));
  CHECK(fs::exists(out / "config_echo.txt"));
  CHECK(fs::exists(out / "run.log"));
}

TEST_CASE("fit nn with epochs 0 exits 2") {
  write(g_work / "m.csv", fixture_measurements());
  CHECK(run("fit --method nn --input " + (g_work / "m.csv").string() + " --out " +
            (g_work / "f0").string() + " --set train.epochs=0") == 2);
}

TEST_CASE("fit kriging: checkpoint predictions match the library oracle") {
  // enough spread in pairwise distances to populate 3 variogram bins
  std::string csv = kHeader;
  csv += "0,s,42.00,-93.60,473,-100\n";
  csv += "1,s,42.01,-93.59,473,-99\n";
  csv += "2,s,42.03,-93.57,473,-97\n";
  csv += "3,s,42.06,-93.54,473,-94\n";
  csv += "4,s,42.10,-93.50,473,-90\n";
  csv += "5,s,42.20,-93.40,473,-80\n";
  write(g_work / "k.csv", csv);
  const fs::path out = g_work / "fk";
  CHECK(run("fit --method kriging --input " + (g_work / "k.csv").string() + " --out " +
            out.string() + " --set kriging.n_bins=3") == 0);
  auto ckpt = json::parse(slurp(out / "model.json"));
  CHECK(ckpt.at("kind") == "kriging");

  remtk::VariogramModel vm;
  vm.kind = remtk::variogram_kind_from_string(
      ckpt.at("variogram").at("kind").get<std::string>());
  vm.nugget = ckpt.at("variogram").at("nugget").get<double>();
  vm.sill = ckpt.at("variogram").at("sill").get<double>();
  vm.range_len = ckpt.at("variogram").at("range_len").get<double>();
  std::vector<remtk::Sample2D> samples;
  for (const auto& row : ckpt.at("samples"))
    samples.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                       row.at(2).get<double>()});
  // map + eval against the same model must agree with a direct krige call
  const fs::path mout = g_work / "fkmap";
  CHECK(run("map --model " + (out / "model.json").string() + " --out " + mout.string() +
            " --set map.nx=2 --set map.ny=2") == 0);
  std::istringstream csv_in(slurp(mout / "rem.csv"));
  std::string line;
  std::getline(csv_in, line);
  const double first_cell = std::stod(line.substr(0, line.find(',')));
  const auto direct = remtk::krige(samples, vm, -0.5, -0.5);
  CHECK(first_cell == doctest::Approx(direct.prediction).epsilon(1e-8));
}

TEST_CASE("pinn with lambda 0 and nn with the same seed write identical parameters") {
  write(g_work / "m.csv", fixture_measurements());
  const std::string common =
      " --set train.epochs=20 --set train.seed=9 --set train.layer_dims=2,8,8,1";
  const fs::path nn_out = g_work / "nn0";
  const fs::path pinn_out = g_work / "pinn0";
  CHECK(run("fit --method nn --input " + (g_work / "m.csv").string() + " --out " +
            nn_out.string() + common) == 0);
  CHECK(run("fit --method pinn --input " + (g_work / "m.csv").string() + " --out " +
            pinn_out.string() + common +
            " --set pinn.lambda_pde=0 --set pinn.n_collocation=8") == 0);
  auto a = json::parse(slurp(nn_out / "model.json"));
  auto b = json::parse(slurp(pinn_out / "model.json"));
  CHECK(a.at("weights").dump() == b.at("weights").dump());
  CHECK(a.at("biases").dump() == b.at("biases").dump());
}

TEST_CASE("eval on the training set of an exact interpolator reports near-zero MSE") {
  std::string csv = kHeader;
  csv += "0,s,42.00,-93.60,473,-100\n";
  csv += "1,s,42.01,-93.59,473,-99\n";
  csv += "2,s,42.03,-93.57,473,-97\n";
  csv += "3,s,42.06,-93.54,473,-94\n";
  csv += "4,s,42.10,-93.50,473,-90\n";
  csv += "5,s,42.20,-93.40,473,-80\n";
  write(g_work / "c.csv", csv);
  const fs::path fout = g_work / "fc";
  CHECK(run("fit --method kriging --input " + (g_work / "c.csv").string() + " --out " +
            fout.string() + " --set kriging.n_bins=3") == 0);
  const fs::path eout = g_work / "ec";
  CHECK(run("eval --model " + (fout / "model.json").string() + " --input " +
            (g_work / "c.csv").string() + " --out " + eout.string()) == 0);
  auto report = json::parse(slurp(eout / "mse_report.json"));
  CHECK(report.at("models").at(0).at("mse_dbm2").get<double>() < 1e-6);
}

TEST_CASE("allocate: database mode with a static channel list") {
  std::string req = "requester_id,bandwidth_mhz,x,y,eirp_desired_dbm,priority\n";
  req += "su1,12,0,0,40,SU\n";
  write(g_work / "req.csv", req);
  const fs::path out = g_work / "alloc";
  CHECK(run("allocate --requests " + (g_work / "req.csv").string() + " --out " +
            out.string() + " --set grid.n_channels=6 --set alloc.db_channels=2,3,5") == 0);
  auto plan = json::parse(slurp(out / "plan.json"));
  REQUIRE(plan.at("grants").size() == 1);
  CHECK(plan.at("grants").at(0).at("first_channel").get<int>() == 2);
  CHECK(plan.at("grants").at(0).at("eirp_cap_dbm").get<double>() == 16.0);
}

TEST_CASE("reruns with identical config produce byte-identical artifacts") {
  write(g_work / "m.csv", fixture_measurements());
  const fs::path a = g_work / "det_a";
  const fs::path b = g_work / "det_b";
  const std::string args = "occupancy --input " + (g_work / "m.csv").string() +
                           " --set grid.n_channels=4";
  CHECK(run(args + " --out " + a.string()) == 0);
  CHECK(run(args + " --out " + b.string()) == 0);
  for (const char* f : {"occupancy_report.json", "availability.csv",
                        "availability_legend.json", "config_echo.txt"})
    CHECK(slurp(a / f) == slurp(b / f));
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <remtk-binary> <workdir>\n");
    return 1;
  }
  g_binary = argv[1];
  g_work = argv[2];
  fs::remove_all(g_work);
  fs::create_directories(g_work);
  doctest::Context ctx;
  return ctx.run();
}
