#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cecsp/cli.hpp"
#include "cecsp/instance_io.hpp"
#include "fixtures.hpp"

namespace cecsp::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cecsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    setenv("CECSP_OUTPUT_DIR", dir_.c_str(), 1);
  }
  void TearDown() override {
    unsetenv("CECSP_OUTPUT_DIR");
    fs::remove_all(dir_);
  }

  int call(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path write(const std::string& name, const Instance& inst) {
    const fs::path p = dir_ / name;
    write_instance(p, inst);
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}), kExitUsage);
  EXPECT_EQ(call({"frobnicate"}), kExitUsage);
  EXPECT_EQ(call({"generate"}), kExitUsage);
  EXPECT_EQ(call({"exact", "x.json", "--export-only", "--no-export"}), kExitUsage);
  EXPECT_EQ(call({"--help"}), kExitOk);
}

TEST_F(CliTest, MissingFileIsFileError) {
  EXPECT_EQ(call({"check", (dir_ / "absent.json").string()}), kExitFile);
  EXPECT_NE(err_.str().find("error"), std::string::npos);
}

TEST_F(CliTest, MalformedInstanceIsFormatError) {
  std::ofstream(dir_ / "bad.json") << "{\"capacity\": 10, \"jobs\": [";
  EXPECT_EQ(call({"check", (dir_ / "bad.json").string()}), kExitFormat);
  std::ofstream(dir_ / "shape.json") << "{\"capacity\": \"ten\"}";
  EXPECT_EQ(call({"check", (dir_ / "shape.json").string()}), kExitFormat);
}

TEST_F(CliTest, CheckVerdicts) {
  EXPECT_EQ(call({"check", write("ex.json", testing::three_job_example()).string()}), kExitOk);
  EXPECT_EQ(out_.str().rfind("pass", 0), 0u);
  EXPECT_EQ(call({"check", write("over.json", testing::overloaded()).string(), "--json"}),
            kExitNegative);
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_FALSE(doc["passes"].get<bool>());
  EXPECT_DOUBLE_EQ(doc["max_flow"].get<double>(), 100);
}

TEST_F(CliTest, GenerateWritesNamedFiles) {
  ASSERT_EQ(call({"generate", "-n", "6", "--count", "3", "--seed", "9", "--adversarial"}), kExitOk);
  for (int idx = 0; idx < 3; ++idx) {
    const fs::path p = dir_ / ("cecsp_n6_P50_a1_" + std::to_string(idx) + ".json");
    ASSERT_TRUE(fs::exists(p)) << p;
    EXPECT_EQ(read_instance(p).num_jobs(), 6);
  }
  GenConfig cfg = GenConfig::preset(6, 50, true);
  cfg.seed = 10;
  EXPECT_EQ(instance_to_json(read_instance(dir_ / "cecsp_n6_P50_a1_1.json")),
            instance_to_json(generate_instance(cfg)));
}

TEST_F(CliTest, SolveThenValidate) {
  const fs::path inst = write("ex.json", testing::three_job_example());
  ASSERT_EQ(call({"solve", inst.string(), "--seed", "3"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("(feasible)"), std::string::npos);
  const fs::path sched = dir_ / "ex.schedule.json";
  ASSERT_TRUE(fs::exists(sched));
  ASSERT_TRUE(fs::exists(dir_ / "ex.record.json"));
  const auto record = nlohmann::json::parse(slurp(dir_ / "ex.record.json"));
  EXPECT_NEAR(record["sa"]["score"].get<double>(), testing::kExampleOptimum, 1e-6);
  EXPECT_EQ(record["config"]["seed"].get<int>(), 3);

  EXPECT_EQ(call({"validate", inst.string(), sched.string()}), kExitOk);
  EXPECT_EQ(out_.str().rfind("feasible", 0), 0u);
  EXPECT_EQ(call({"validate", inst.string(), sched.string(), "--json"}), kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(out_.str())["feasible"].get<bool>());
}

TEST_F(CliTest, ValidateFlagsBrokenSchedule) {
  const fs::path inst = write("ex.json", testing::three_job_example());
  ASSERT_EQ(call({"exact", inst.string()}), kExitOk);
  Schedule s = read_schedule(dir_ / "ex.exact.json");
  s.times[EventId{6}.index()] += 1.0;  // C3 past its deadline
  write_schedule(dir_ / "late.json", s);
  EXPECT_EQ(call({"validate", inst.string(), (dir_ / "late.json").string()}), kExitNegative);
  EXPECT_NE(out_.str().find("job 3"), std::string::npos);
  EXPECT_EQ(call({"validate", write("one.json", testing::single_job()).string(),
                  (dir_ / "late.json").string()}),
            kExitFormat);
}

TEST_F(CliTest, SolveIsDeterministic) {
  const fs::path inst = write("g.json", testing::generated(6, 4));
  ASSERT_EQ(call({"solve", inst.string(), "--max-iter", "150", "-o", (dir_ / "a.json").string()}),
            kExitOk);
  ASSERT_EQ(call({"solve", inst.string(), "--max-iter", "150", "-o", (dir_ / "b.json").string()}),
            kExitOk);
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
}

TEST_F(CliTest, SolveRejectsBadConfig) {
  const fs::path inst = write("ex.json", testing::three_job_example());
  EXPECT_EQ(call({"solve", inst.string(), "--alpha", "1.5"}), kExitUsage);
  std::ofstream(dir_ / "cfg.json") << "{\"alpha\": \"slow\"}";
  EXPECT_EQ(call({"solve", inst.string(), "--config", (dir_ / "cfg.json").string()}), kExitFormat);
  EXPECT_EQ(call({"solve", inst.string(), "--restart", "--no-restart"}), kExitUsage);
}

TEST_F(CliTest, SolveWritesGantt) {
  const fs::path inst = write("ex.json", testing::three_job_example());
  ASSERT_EQ(call({"solve", inst.string(), "--gantt", (dir_ / "ex.svg").string()}), kExitOk);
  const std::string svg = slurp(dir_ / "ex.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("job 3"), std::string::npos);
}

TEST_F(CliTest, ExactEnumeratesOrExports) {
  const fs::path small = write("ex.json", testing::three_job_example());
  ASSERT_EQ(call({"exact", small.string()}), kExitOk);
  EXPECT_NE(out_.str().find("objective 27.16666667"), std::string::npos);
  EXPECT_EQ(call({"exact", write("over.json", testing::overloaded()).string()}), kExitNegative);

  const fs::path big = write("big.json", testing::generated(9, 2));
  EXPECT_EQ(call({"exact", big.string(), "--no-export"}), kExitGuard);
  ASSERT_EQ(call({"exact", big.string()}), kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "big.lp"));
  ASSERT_EQ(call({"exact", small.string(), "--export-only", "--lp", (dir_ / "m.lp").string()}),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "m.lp"));
}

TEST_F(CliTest, ExportWritesLpFile) {
  const fs::path inst = write("g5.json", testing::generated(5, 3));
  ASSERT_EQ(call({"export", inst.string()}), kExitOk);
  const std::string lp = slurp(dir_ / "g5.lp");
  EXPECT_NE(lp.find("t_10"), std::string::npos);
  EXPECT_NE(lp.find("Binaries"), std::string::npos);
}

TEST_F(CliTest, BatchTable) {
  ASSERT_EQ(call({"batch", "--sizes", "3", "--capacities", "50", "--count", "4", "--max-iter",
                  "100", "--omit-timing"}),
            kExitOk)
      << err_.str();
  std::istringstream csv(slurp(dir_ / "batch.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,P,adv,idx,flow_feas,sa_time,sa_obj,sa_feasible,init_obj,exact_time,exact_obj");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("3,50,0,", 0), 0u) << line;
    EXPECT_NE(line.find(",,"), std::string::npos) << line;  // empty timing
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, BatchSerialMatchesParallel) {
  ASSERT_EQ(call({"batch", "--sizes", "2,3", "--adv", "0,1", "--count", "2", "--max-iter", "80",
                  "--omit-timing", "-o", (dir_ / "par.csv").string()}),
            kExitOk);
  ASSERT_EQ(call({"batch", "--sizes", "2,3", "--adv", "0,1", "--count", "2", "--max-iter", "80",
                  "--omit-timing", "--serial", "-o", (dir_ / "ser.csv").string()}),
            kExitOk);
  EXPECT_EQ(slurp(dir_ / "par.csv"), slurp(dir_ / "ser.csv"));
}

TEST_F(CliTest, BatchWithReference) {
  std::ofstream(dir_ / "ref.csv") << "n,P,adv,idx,best_known\n3,50,0,0,12.5\n3,50,0,1,\n";
  ASSERT_EQ(call({"batch", "--sizes", "3", "--count", "2", "--max-iter", "50", "--reference",
                  (dir_ / "ref.csv").string()}),
            kExitOk);
  std::istringstream csv(slurp(dir_ / "batch.csv"));
  std::string header, first, second;
  std::getline(csv, header);
  std::getline(csv, first);
  std::getline(csv, second);
  EXPECT_EQ(header.substr(header.rfind(',') + 1), "best_known");
  EXPECT_EQ(first.substr(first.rfind(',') + 1), "12.500000");
  EXPECT_EQ(second.back(), ',');

  std::ofstream(dir_ / "broken.csv") << "n,P,adv\n";
  EXPECT_EQ(call({"batch", "--sizes", "2", "--count", "1", "--max-iter", "10", "--reference",
                  (dir_ / "broken.csv").string()}),
            kExitFormat);
}

TEST_F(CliTest, BatchWritesInstances) {
  ASSERT_EQ(call({"batch", "--sizes", "2", "--count", "2", "--max-iter", "10", "--instances-dir",
                  (dir_ / "inst").string()}),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "inst" / "cecsp_n2_P50_a0_0.json"));
  EXPECT_TRUE(fs::exists(dir_ / "inst" / "cecsp_n2_P50_a0_1.json"));
}

}  // namespace
}  // namespace cecsp::cli
