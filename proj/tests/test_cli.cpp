#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "jordan/io.hpp"
#include "jordan/jordan.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ToolRun {
  int status = -1;
  std::string out;
};

// Runs the tool with stdout captured; stderr is discarded.
ToolRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" JENTROPY_PATH "' " + args + " 2>/dev/null";
  ToolRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("jentropy_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ComputeGeometricMean) {
  const ToolRun r = run("compute --expr geo --lambda 0.5 --a '{\"matrix\":[[1]]}' --b '{\"matrix\":[[9]]}'");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["result"]["coords"][0].get<double>(), 3.0, 1e-14);
  EXPECT_EQ(j["expression"], "geo");
}

TEST_F(Cli, ComputeEntropyOfEqualOperandsIsZero) {
  const ToolRun r = run("compute --expr S --a '{\"matrix\":[[2,1],[1,2]]}' --b '{\"matrix\":[[2,1],[1,2]]}'");
  ASSERT_EQ(r.status, 0);
  for (const auto& c : json::parse(r.out)["result"]["coords"]) EXPECT_NEAR(c.get<double>(), 0.0, 1e-14);
}

TEST_F(Cli, ComputeBoundFromFiles) {
  const double e2 = std::exp(2.0);
  jordan::io::write_text_file(path("a.json"), R"({"algebra":"sym","dim":1,"coords":[1]})");
  jordan::io::write_text_file(path("b.json"), json{{"algebra", "sym"}, {"dim", 1}, {"coords", {e2}}}.dump());
  const ToolRun r = run("compute --expr bound:V --alpha 0 --beta 1 --a " + path("a.json") + " --b " + path("b.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(json::parse(r.out)["result"]["coords"][0].get<double>(), 0.5 * (e2 - 1.0 / e2), 1e-14);
}

TEST_F(Cli, ComputeErrorsExitTwo) {
  EXPECT_EQ(run("compute --expr S --a '{\"matrix\":[[1,2],[2,1]]}' --b '{\"matrix\":[[1,0],[0,1]]}'").status, 2);
  EXPECT_EQ(run("compute --expr T --lambda 0 --a '{\"matrix\":[[1]]}' --b '{\"matrix\":[[2]]}'").status, 2);
  EXPECT_EQ(run("compute --expr bound:I --a '{\"matrix\":[[1]]}' --b '{\"matrix\":[[2]]}'").status, 2);
}

TEST_F(Cli, VerifyPassesAndIsByteIdentical) {
  const std::string args = "verify --id thm4.6i --backend sym --dim 3 --trials 1 --seed 7 --out ";
  ASSERT_EQ(run(args + path("r1.json")).status, 0);
  ASSERT_EQ(run(args + path("r2.json"), "JE_THREADS=0").status, 0);
  ASSERT_EQ(run("verify --id thm4.6i --backend sym --dim 3 --trials 40 --seed 7 --out " + path("p1.json"),
                "JE_THREADS=0")
                .status,
            0);
  ASSERT_EQ(run("verify --id thm4.6i --backend sym --dim 3 --trials 40 --seed 7 --out " + path("p2.json"),
                "JE_THREADS=4")
                .status,
            0);
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json")));
  EXPECT_EQ(slurp(path("p1.json")), slurp(path("p2.json")));
  const json j = json::parse(slurp(path("p1.json")));
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["theorem_id"], "thm4.6i");
  EXPECT_EQ(j["reports"][0]["trials"], 40);
  EXPECT_TRUE(j["reports"][0]["pass"].get<bool>());
}

TEST_F(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --id no-such-id").status, 4);
  EXPECT_EQ(run("verify --id thm4.6i --backend spin --dim 2 --trials 30 --negative-control").status, 0);
  // An absurd tolerance override makes exact-looking chains fail.
  EXPECT_EQ(run("verify --id thm4.6i --backend sym --dim 3 --trials 30 --tol 0 --cond 1e4").status, 1);
  EXPECT_EQ(run("verify --id thm4.6i --backend sym --dim 3 --trials 5 --alpha -1").status, 2);
}

TEST_F(Cli, VerifyAllPasses) {
  const ToolRun r = run("verify --trials 10 --format csv");
  ASSERT_EQ(r.status, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_TRUE(line.ends_with(",pass")) << line;
  }
  EXPECT_GT(rows, 400);
}

TEST_F(Cli, VerifyCsvFormat) {
  const ToolRun r = run("verify --id prop4.5a --trials 5 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("theorem_id,backend,dim,trials,worst_margin,verdict\nprop4.5a,sym,1,5,", 0), 0u);
  EXPECT_NE(r.out.find(",pass\n"), std::string::npos);
}

TEST_F(Cli, GenPositiveWithConditionBound) {
  const ToolRun r = run("gen --backend sym --dim 4 --cond 10 --seed 3");
  ASSERT_EQ(r.status, 0);
  const jordan::Element a = jordan::io::element_from_json(json::parse(r.out)["A"]);
  const auto ev = jordan::eigenvalues(a);
  EXPECT_GT(ev.front(), 0.0);
  EXPECT_LE(ev.back() / ev.front(), 10.0 * (1 + 1e-12));
  EXPECT_EQ(run("gen --backend sym --dim 4 --cond 10 --seed 3").out, r.out);
}

TEST_F(Cli, GenHypothesisPairRoundTrips) {
  const ToolRun r = run("gen --backend spin --dim 3 --seed 5 --hypothesis 'A^b<=B' --beta 2");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  const jordan::Element a = jordan::io::element_from_json(j["A"]);
  const jordan::Element b = jordan::io::element_from_json(j["B"]);
  EXPECT_TRUE(jordan::loewner_leq(jordan::power(a, 2.0), b, 1e-8).verdict);
  // Parsing and re-serializing reproduces the coordinates bit for bit.
  EXPECT_EQ(jordan::io::to_json(a), j["A"]);
  EXPECT_EQ(jordan::io::to_json(b), j["B"]);
}

TEST_F(Cli, ReportSummaries) {
  fs::create_directories(path("empty"));
  const ToolRun empty = run("report --in " + path("empty"));
  EXPECT_EQ(empty.status, 0);
  EXPECT_TRUE(json::parse(empty.out)["summary"].empty());

  fs::create_directories(path("mixed"));
  ASSERT_EQ(run("verify --id thm4.6ii --backend spin --dim 2 --trials 20 --out " + path("mixed/a.json")).status, 0);
  const ToolRun one = run("report --in " + path("mixed") + " --format csv");
  EXPECT_EQ(one.status, 0);
  EXPECT_NE(one.out.find("thm4.6ii,spin,2,20,"), std::string::npos);
  EXPECT_NE(one.out.find(",pass\n"), std::string::npos);

  ASSERT_EQ(run("verify --id thm4.6i --backend sym --dim 3 --trials 30 --tol 0 --out " + path("mixed/b.json")).status,
            1);
  EXPECT_EQ(run("report --in " + path("mixed")).status, 1);

  jordan::io::write_text_file(path("mixed/c.json"), "{\"theorem_id\": 3");
  EXPECT_EQ(run("report --in " + path("mixed")).status, 5);
}

TEST_F(Cli, ListShowsEveryId) {
  const ToolRun r = run("list");
  ASSERT_EQ(r.status, 0);
  for (const auto& id : jordan::registry_ids()) EXPECT_NE(r.out.find(id + "\t"), std::string::npos) << id;
}
