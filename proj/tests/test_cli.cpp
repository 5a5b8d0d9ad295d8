#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "galilax/errors.hpp"
#include "run_config.hpp"

using namespace galilax;
using namespace galilax::cli;
namespace fs = std::filesystem;

namespace {

const char* kCircular = R"({
  "masses": [1, 1], "dimension": 2,
  "potential": {"kind": "newtonian", "G": 1},
  "positions": [[-0.5, 0], [0.5, 0]],
  "momenta": [[0, -0.7071067811865476], [0, 0.7071067811865476]],
  "integrator": {"method": "rk45", "rel_tol": 1e-10, "abs_tol": 1e-10, "output_interval": 0.5},
  "t_end": 3, "mode": "both"
})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("galilax_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  int run(const std::function<int(const Options&, std::ostream&, const Logger&)>& cmd, const Options& o) {
    out_.str("");
    err_.str("");
    return run_guarded([&] { return cmd(o, out_, log_); }, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
  std::ostringstream log_sink_;
  Logger log_{LogLevel::error, log_sink_};
};

}  // namespace

TEST(RunConfig, ParsesAndValidates) {
  const RunConfig c = parse_run_config(kCircular);
  EXPECT_EQ(c.system.bodies(), 2);
  EXPECT_EQ(c.mode, SimulationMode::both);
  EXPECT_EQ(c.initial_state().half_size(), 1);
  EXPECT_THROW(parse_run_config("{not json"), InvalidInput);
  EXPECT_THROW(parse_run_config(R"({"masses": [1, -1], "dimension": 2})"), InvalidInput);
  EXPECT_THROW(parse_run_config(R"({"masses": [1, 1], "dimension": 2})").initial_state(), InvalidInput);
  EXPECT_THROW(parse_mode("X"), InvalidInput);
  EXPECT_EQ(parse_mode("k"), SimulationMode::k);
}

TEST_F(CliTest, SimulateWritesDiagnosticsWithLaxResidual) {
  Options o;
  o.config = write("c.json", kCircular);
  o.out = (dir_ / "run").string();
  ASSERT_EQ(run(cmd_simulate, o), kOk) << err_.str();
  std::istringstream diag(slurp(dir_ / "run" / "diagnostics.tsv"));
  std::string header;
  std::getline(diag, header);
  EXPECT_EQ(header, "t\tenergy\tL_norm\ttrK2\tlax_residual");
  int rows = 0;
  double e0 = 0.0;
  for (std::string line; std::getline(diag, line); ++rows) {
    std::istringstream ls(line);
    double t, e, l, k2, res;
    ls >> t >> e >> l >> k2 >> res;
    if (rows == 0) e0 = e;
    EXPECT_NEAR(e, e0, 1e-9);
    EXPECT_LE(res, 1e-6);
  }
  EXPECT_EQ(rows, 7);
}

TEST_F(CliTest, SimulateZeroTimeGivesOneRow) {
  std::string cfg = kCircular;
  cfg.replace(cfg.find("\"t_end\": 3"), 10, "\"t_end\": 0");
  Options o;
  o.config = write("c.json", cfg);
  o.out = dir_.string();
  o.mode = "Z";
  ASSERT_EQ(run(cmd_simulate, o), kOk);
  std::istringstream traj(slurp(dir_ / "trajectory.tsv"));
  int lines = 0;
  for (std::string line; std::getline(traj, line);) ++lines;
  EXPECT_EQ(lines, 2);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  Options o;
  o.config = write("c.json", kCircular);
  o.out = (dir_ / "a").string();
  ASSERT_EQ(run(cmd_simulate, o), kOk);
  o.out = (dir_ / "b").string();
  ASSERT_EQ(run(cmd_simulate, o), kOk);
  EXPECT_EQ(slurp(dir_ / "a" / "trajectory.tsv"), slurp(dir_ / "b" / "trajectory.tsv"));
  EXPECT_EQ(slurp(dir_ / "a" / "diagnostics.tsv"), slurp(dir_ / "b" / "diagnostics.tsv"));
}

TEST_F(CliTest, SimulateCollisionExitsThree) {
  Options o;
  o.config = write("c.json", R"({"masses": [1, 1], "dimension": 1,
    "positions": [[-0.5], [0.5]], "momenta": [[0], [0]], "t_end": 5})");
  EXPECT_EQ(run(cmd_simulate, o), kIntegrationFailure);
  EXPECT_NE(err_.str().find("t = "), std::string::npos) << err_.str();
}

TEST_F(CliTest, InputErrorsExitTwo) {
  Options o;
  o.config = (dir_ / "missing.json").string();
  EXPECT_EQ(run(cmd_simulate, o), kInputError);
  o.config = write("bad.json", "{\"masses\": [1]}");
  EXPECT_EQ(run(cmd_invariants, o), kInputError);
}

TEST_F(CliTest, InvariantsOfSpatialCollinearAndZeroStates) {
  Options o;
  o.config = write("s.json", R"({"masses": [1, 1, 1], "dimension": 3,
    "z": [[1, 0, 0, 0.3], [0, 0.5, 1, 0], [0.2, 0, 0, 1]]})");
  ASSERT_EQ(run(cmd_invariants, o), kOk);
  EXPECT_NE(out_.str().find("(p,q) = (1,1)"), std::string::npos) << out_.str();

  o.config = write("c.json", R"({"masses": [1, 1, 1], "dimension": 3,
    "z": [[1, 2, 0.5, -1], [0, 0, 0, 0], [0, 0, 0, 0]]})");
  ASSERT_EQ(run(cmd_invariants, o), kOk);
  EXPECT_NE(out_.str().find("(p,q) = (0,1)"), std::string::npos) << out_.str();

  o.config = write("z.json", R"({"masses": [1, 1, 1], "dimension": 2, "z": [[0, 0, 0, 0], [0, 0, 0, 0]]})");
  ASSERT_EQ(run(cmd_invariants, o), kOk);
  EXPECT_NE(out_.str().find("(p,q) = (0,0)"), std::string::npos) << out_.str();
}

TEST_F(CliTest, Classify) {
  Options o;
  o.m = 2;
  o.p = 0;
  o.q = 1;
  ASSERT_EQ(run(cmd_classify, o), kOk);
  EXPECT_NE(out_.str().find("dimension 4\n"), std::string::npos);
  EXPECT_NE(out_.str().find("Sp(2) ⋉ (Heis_1)"), std::string::npos);

  o.m = 3;
  o.p = 1;
  o.q = 1;
  o.omega = {2.5};
  ASSERT_EQ(run(cmd_classify, o), kOk);
  EXPECT_NE(out_.str().find("dimension 14"), std::string::npos);
  EXPECT_NE(out_.str().find("closure strata (1,1) (1,0)"), std::string::npos);

  o.m = 2;
  o.p = 2;
  o.q = 0;
  o.omega = {1.0, 1.0};
  ASSERT_EQ(run(cmd_classify, o), kOk);
  EXPECT_NE(out_.str().find("dimension 6\n"), std::string::npos);
  EXPECT_NE(out_.str().find("isotropy U(2)"), std::string::npos);

  o.p = 3;
  EXPECT_EQ(run(cmd_classify, o), kInputError);
  o.m = 13;
  o.p = 2;
  o.q = 3;
  o.omega = {1.0, 1.0};
  EXPECT_EQ(run(cmd_classify, o), kInputError);
  EXPECT_NE(err_.str().find("unsupported"), std::string::npos);
}

TEST_F(CliTest, TablesWriteFiles) {
  Options o;
  o.n = 3;
  o.out = dir_.string();
  ASSERT_EQ(run(cmd_tables, o), kOk);
  EXPECT_EQ(slurp(dir_ / "table_n3.txt"), out_.str());
  o.n = 5;
  EXPECT_EQ(run(cmd_tables, o), kInputError);
  o.spatial = true;
  ASSERT_EQ(run(cmd_tables, o), kOk);
  EXPECT_NE(out_.str().find("reduced dimension 20"), std::string::npos);
}

TEST_F(CliTest, VerifySuitesAreSeeded) {
  Options o;
  o.suite = "spectral";
  o.trials = 20;
  ASSERT_EQ(run(cmd_verify, o), kOk);
  const std::string first = out_.str();
  EXPECT_NE(first.find("spectral: PASS"), std::string::npos);
  ASSERT_EQ(run(cmd_verify, o), kOk);
  EXPECT_EQ(out_.str(), first);
  o.suite = "nope";
  EXPECT_EQ(run(cmd_verify, o), kInputError);
}

TEST(Logging, LevelFromEnvironment) {
  ::setenv("GALILAX_LOG", "debug", 1);
  EXPECT_EQ(log_level_from_env(), LogLevel::debug);
  ::setenv("GALILAX_LOG", "0", 1);
  EXPECT_EQ(log_level_from_env(), LogLevel::error);
  ::unsetenv("GALILAX_LOG");
  EXPECT_EQ(log_level_from_env(), LogLevel::warn);

  std::ostringstream sink;
  Logger log(LogLevel::warn, sink);
  log.info("hidden");
  log.warn("shown");
  EXPECT_EQ(sink.str(), "[galilax warn] shown\n");
}
