#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sarb/cli.hpp"
#include "sarb/operational.hpp"

using namespace sarb;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/sarb_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string synthetic_day_csv() {
  std::ostringstream out;
  out.precision(17);
  out << "timestamp,demand_mw\n";
  for (int i = 0; i < 72; ++i)
    out << i << "," << 18091.0 + 4671.0 * std::sin(0.26 * i) << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("plan emits a JSON solution that round-trips") {
  cli::RunConfig cfg;  // ISO-NE defaults
  std::ostringstream out, err;
  REQUIRE(cli::run_plan(cfg, out, err) == cli::kOk);

  const json j = json::parse(out.str());
  CHECK(j["storage_used"] == true);
  CHECK(j["binding"] == "lifespan_bound");
  CHECK(j["savings_fraction"].get<double>() == doctest::Approx(0.026236).epsilon(1e-4));
  CHECK(j["lifespan_years"].get<double>() == doctest::Approx(76.0).epsilon(1e-9));

  // recompute the cost from the emitted (gamma*, C*): j_total must reproduce
  const DemandProfile demand(j["demand"]["d0"].get<double>(),
                             j["demand"]["d1"].get<double>(),
                             j["demand"]["omega0"].get<double>());
  const CostBreakdown c =
      total_cost(demand, cfg.generation(), cfg.tech(), j["gamma_star"].get<double>(),
                 j["c_star_mwh"].get<double>());
  CHECK(std::abs(c.j_total - j["j_total"].get<double>()) <=
        1e-12 * j["j_total"].get<double>());
}

TEST_CASE("plan exit codes") {
  SUBCASE("no-storage instance still exits 0") {
    cli::RunConfig cfg;
    cfg.rho *= 1000.0;
    std::ostringstream out, err;
    CHECK(cli::run_plan(cfg, out, err) == cli::kOk);
    const json j = json::parse(out.str());
    CHECK(j["storage_used"] == false);
    CHECK(j["gamma_star"].is_null());
    CHECK(j["c_star_mwh"] == 0.0);
  }
  SUBCASE("infeasible bounds exit 3 naming the bound") {
    cli::RunConfig cfg;
    cfg.epsilon = 10000.0;
    std::ostringstream out, err;
    CHECK(cli::run_plan(cfg, out, err) == cli::kInfeasible);
    CHECK(err.str().find("y_ub") != std::string::npos);
  }
  SUBCASE("invalid parameters exit 2") {
    cli::RunConfig cfg;
    cfg.a = -1.0;
    std::ostringstream out, err;
    CHECK(cli::run_plan(cfg, out, err) == cli::kValidationError);
  }
}

TEST_CASE("fit-demand on a synthetic day") {
  const std::string path = write_temp("fit.csv", synthetic_day_csv());
  std::ostringstream out, err;
  REQUIRE(cli::run_fit_demand(path, 2.0 * M_PI / 0.26, out, err) == cli::kOk);
  const json j = json::parse(out.str());
  CHECK(j["d0"].get<double>() == doctest::Approx(18091.0).epsilon(1e-9));
  CHECK(j["d1"].get<double>() == doctest::Approx(4671.0).epsilon(1e-9));
  CHECK(j["omega0"].get<double>() == doctest::Approx(0.26).epsilon(1e-9));
  std::remove(path.c_str());
}

TEST_CASE("fit-demand rejects malformed input with exit 2") {
  const std::string path = write_temp("bad.csv", "timestamp,demand_mw\n0,100\n1,-5\n");
  std::ostringstream out, err;
  CHECK(cli::run_fit_demand(path, 24.0, out, err) == cli::kValidationError);
  std::remove(path.c_str());
}

TEST_CASE("sweep emits a stable CSV") {
  cli::RunConfig cfg;
  cfg.sweep_points = 12;
  std::ostringstream out1, out2, err;
  REQUIRE(cli::run_sweep(cfg, out1, err) == cli::kOk);
  REQUIRE(cli::run_sweep(cfg, out2, err) == cli::kOk);
  CHECK(out1.str() == out2.str());  // deterministic

  std::istringstream in(out1.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == cli::kSweepCsvHeader);
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == cfg.sweep_points);

  // first row is the omega0 = 0.26 instance
  std::istringstream again(out1.str());
  std::getline(again, header);
  std::getline(again, line);
  CHECK(line.find("lifespan_bound") != std::string::npos);
}

TEST_CASE("sweep writes to a file when asked") {
  cli::RunConfig cfg;
  cfg.sweep_points = 5;
  cfg.out_path = "/tmp/sarb_test_sweep.csv";
  std::ostringstream out, err;
  REQUIRE(cli::run_sweep(cfg, out, err) == cli::kOk);
  CHECK(out.str().empty());
  std::ifstream in(cfg.out_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == cli::kSweepCsvHeader);
  std::remove(cfg.out_path.c_str());
}

TEST_CASE("plan can fit its demand profile from a CSV") {
  const std::string path = write_temp("plan_fit.csv", synthetic_day_csv());
  cli::RunConfig cfg;
  cfg.csv_path = path;
  cfg.period_hours = 2.0 * M_PI / 0.26;
  std::ostringstream out, err;
  REQUIRE(cli::run_plan(cfg, out, err) == cli::kOk);
  const json j = json::parse(out.str());
  CHECK(j["demand"]["d0"].get<double>() == doctest::Approx(18091.0).epsilon(1e-6));
  CHECK(j["binding"] == "lifespan_bound");
  std::remove(path.c_str());
}

TEST_CASE("sweep flags infeasible rows and keeps going") {
  cli::RunConfig cfg;
  cfg.omega_lo = 0.05;  // below the lifespan-feasible range
  cfg.omega_hi = 1.0;
  cfg.sweep_points = 8;
  std::ostringstream out, err;
  REQUIRE(cli::run_sweep(cfg, out, err) == cli::kOk);
  CHECK(out.str().find("infeasible") != std::string::npos);
  CHECK(out.str().find("lifespan_bound") != std::string::npos);  // later rows succeed
}

TEST_CASE("verify passes on the reference configuration") {
  cli::RunConfig cfg;
  std::ostringstream out, err;
  CHECK(cli::run_verify(cfg, out, err) == cli::kOk);
  const json j = json::parse(out.str());
  CHECK(j["all_pass"] == true);
  CHECK(j["checks"].size() >= 8);
}

TEST_CASE("verify is deterministic for a fixed seed") {
  cli::RunConfig cfg;
  cfg.seed = 42;
  std::ostringstream out1, out2, err;
  REQUIRE(cli::run_verify(cfg, out1, err) == cli::kOk);
  REQUIRE(cli::run_verify(cfg, out2, err) == cli::kOk);
  CHECK(out1.str() == out2.str());
}

TEST_CASE("verify reports a convexity violation and exits 1") {
  cli::RunConfig cfg;
  cfg.k2 = 0.5;  // increasing k2 breaks the stress-curve assumptions
  std::ostringstream out, err;
  CHECK(cli::run_verify(cfg, out, err) == cli::kVerificationFailure);
  const json j = json::parse(out.str());
  CHECK(j["all_pass"] == false);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "stress_curve_convexity" && c["pass"] == false) found = true;
  CHECK(found);
}

#ifdef STORAGE_ARB_BIN
TEST_CASE("binary smoke test: plan with a config file and flag override") {
  const std::string config = write_temp("cfg.ini",
                                        "d0 = 18091\n"
                                        "d1 = 4671\n"
                                        "omega0 = 0.26\n"
                                        "rho = 209000\n");
  const std::string out_json = "/tmp/sarb_test_plan_out.json";
  const std::string cmd = std::string(STORAGE_ARB_BIN) + " plan --config " + config +
                          " --omega0 0.52 > " + out_json + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in(out_json);
  const json j = json::parse(in);
  // the flag wins over the config file value
  CHECK(j["demand"]["omega0"].get<double>() == doctest::Approx(0.52).epsilon(1e-12));
  std::remove(config.c_str());
  std::remove(out_json.c_str());
}

TEST_CASE("binary smoke test: infeasible plan exits 3") {
  const std::string cmd =
      std::string(STORAGE_ARB_BIN) + " plan --epsilon 10000 >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 3);
}
#endif
