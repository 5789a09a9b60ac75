#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "scsim/scsim.h"

namespace fs = std::filesystem;

namespace {

const char* kShort = "[engine]\ndelta_large = 60\nduration = 300\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version and schema") {
  CHECK(std::string(scsim_version()).size() > 0);
  CHECK(scsim_metrics_schema_version() == 1);
}

TEST_CASE("scenario parse and errors") {
  scsim_scenario* sc = nullptr;
  REQUIRE(scsim_scenario_parse(nullptr, nullptr, 0, &sc) == SCSIM_OK);
  CHECK(scsim_scenario_seed(sc) == 42);
  scsim_scenario_destroy(sc);

  const char* overrides[] = {"engine.seed=7"};
  REQUIRE(scsim_scenario_parse(kShort, overrides, 1, &sc) == SCSIM_OK);
  CHECK(scsim_scenario_seed(sc) == 7);
  scsim_scenario_destroy(sc);

  scsim_scenario* bad = nullptr;
  CHECK(scsim_scenario_parse("[catalog]\nzipf = 2\n", nullptr, 0, &bad) == SCSIM_ERR_CONFIG);
  CHECK(bad == nullptr);
  CHECK(std::string(scsim_last_error()).find("unknown key") != std::string::npos);
  CHECK(scsim_scenario_parse(nullptr, nullptr, 0, nullptr) == SCSIM_ERR_INVALID_ARGUMENT);
  CHECK(scsim_scenario_load("/nonexistent.cfg", nullptr, 0, &bad) == SCSIM_ERR_CONFIG);
  scsim_scenario_destroy(nullptr);
  scsim_report_destroy(nullptr);
}

TEST_CASE("run and inspect a report") {
  scsim_scenario* sc = nullptr;
  REQUIRE(scsim_scenario_parse(kShort, nullptr, 0, &sc) == SCSIM_OK);
  scsim_report* rep = nullptr;
  REQUIRE(scsim_run(sc, &rep) == SCSIM_OK);
  CHECK(std::string(scsim_last_error()).empty());
  REQUIRE(scsim_report_epoch_count(rep) == 5);

  scsim_run_summary sum{};
  REQUIRE(scsim_report_summary(rep, &sum) == SCSIM_OK);
  CHECK(sum.offered == sum.scs_served + sum.mbs_served);
  CHECK(sum.n_stations == 10);
  CHECK(sum.total_steps == 300);

  std::uint64_t offered = 0;
  for (size_t e = 0; e < 5; ++e) {
    scsim_epoch_metrics m{};
    REQUIRE(scsim_report_epoch(rep, e, &m) == SCSIM_OK);
    CHECK(m.epoch_start_s == 60.0 * static_cast<double>(e));
    CHECK(m.offered == m.scs_served + m.mbs_served);
    offered += m.offered;
  }
  CHECK(offered == sum.offered);
  scsim_epoch_metrics m{};
  CHECK(scsim_report_epoch(rep, 5, &m) == SCSIM_ERR_INVALID_ARGUMENT);

  REQUIRE(scsim_report_station_count(rep) == 10);
  scsim_battery_ledger b{};
  REQUIRE(scsim_report_battery(rep, 0, &b) == SCSIM_OK);
  CHECK(std::fabs(b.harvested - b.overflow - b.consumed - (b.level - b.initial_level)) < 1e-9);
  CHECK(scsim_report_battery(rep, 10, &b) == SCSIM_ERR_INVALID_ARGUMENT);

  const fs::path out = fs::temp_directory_path() / "scsim_capi_metrics.csv";
  REQUIRE(scsim_report_write_metrics_csv(rep, out.string().c_str()) == SCSIM_OK);
  CHECK(slurp(out).rfind("epoch_start_s,offered,", 0) == 0);
  fs::remove(out);
  CHECK(scsim_report_write_metrics_csv(rep, "/nonexistent/dir/m.csv") == SCSIM_ERR_RUNTIME);

  scsim_report_destroy(rep);
  scsim_scenario_destroy(sc);
}

TEST_CASE("expected_offload through the C API") {
  CHECK(scsim_expected_offload(0.0, 10) == 0.0);
  CHECK(scsim_expected_offload(3.0, 1000) == doctest::Approx(3.0));
  CHECK(std::isnan(scsim_expected_offload(-1.0, 10)));
}

TEST_CASE("commands write their outputs") {
  scsim_scenario* sc = nullptr;
  const char* overrides[] = {"engine.sweep_cache_sizes=0,31,1000"};
  REQUIRE(scsim_scenario_parse(kShort, overrides, 1, &sc) == SCSIM_OK);
  const fs::path root = fs::temp_directory_path() / "scsim_capi_cmds";
  fs::remove_all(root);

  REQUIRE(scsim_cmd_run(sc, (root / "run").string().c_str(), 2) == SCSIM_OK);
  REQUIRE(scsim_cmd_sweep_cache(sc, (root / "sweep").string().c_str(), 1) == SCSIM_OK);
  double ratio = 0.0;
  REQUIRE(scsim_cmd_compare_energy(sc, (root / "cmp").string().c_str(), 1, &ratio) == SCSIM_OK);
  CHECK(ratio > 0.0);
  for (const char* dir : {"run", "sweep", "cmp"})
    for (const char* file : {"metrics.csv", "summary.csv", "plot.svg"}) {
      CAPTURE(dir);
      CAPTURE(file);
      CHECK(fs::file_size(root / dir / file) > 0);
    }
  const std::string summary = slurp(root / "run" / "summary.csv");
  CHECK(summary.find("run-seed42") != std::string::npos);
  CHECK(summary.find("run-seed43") != std::string::npos);

  CHECK(scsim_cmd_run(sc, (root / "run").string().c_str(), 0) == SCSIM_ERR_CONFIG);
  fs::remove_all(root);
  scsim_scenario_destroy(sc);
}
