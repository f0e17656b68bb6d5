#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "lacunary/serialize.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string command = std::string(LACUNARY_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lacunary-cli-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("generate --nonsense").status, 2);
  EXPECT_EQ(run("independence").status, 2);
}

TEST(Cli, IndependenceExitCodes) {
  const Result dependent = run("independence --elements 1,2,3 --s 2");
  EXPECT_EQ(dependent.status, 4);
  const auto json = lacunary::parse_json(dependent.out);
  EXPECT_EQ(json.at("witness").at("coefficients"), lacunary::Json::parse("[2,-1,-1]"));
  EXPECT_EQ(run("independence --elements 1,2,5,11,24 --s 2").status, 0);
  EXPECT_EQ(run("independence --elements 1,2,x --s 2").status, 2);
}

TEST(Cli, GenerateThenAnalyse) {
  const auto dir = scratch("generate");
  const auto set = dir / "primes.txt";
  const Result g = run("generate --primes --limit 2000 --format lines > " + set.string());
  ASSERT_EQ(g.status, 0);
  const Result p = run("partition --set " + set.string() + " --kind dyadic");
  ASSERT_EQ(p.status, 0);
  EXPECT_EQ(lacunary::parse_json(p.out).at("blocks").size(), 12u);
  const Result w = run("weyl --set " + set.string() + " --point 1/3 --k 100");
  ASSERT_EQ(w.status, 0);
  const Result s1 = run("--seed 5 select --set " + set.string() + " --density 0.2");
  const Result s2 = run("--seed 5 select --set " + set.string() + " --density 0.2");
  EXPECT_EQ(s1.out, s2.out);
  const Result psi = run("psi --set " + set.string() + " --partition dyadic --linear --cap --csv");
  EXPECT_EQ(psi.status, 0);
  EXPECT_EQ(psi.out.rfind("k,", 0), 0u);
}

TEST(Cli, PreconditionFailures) {
  const auto dir = scratch("pre");
  const auto set = dir / "small.txt";
  std::ofstream(set) << "2\n3\n5\n7\n";
  // block 2 = {3} cannot hold ell = 2
  EXPECT_EQ(run("select --set " + set.string() + " --partition dyadic --linear").status, 3);
  EXPECT_EQ(run("select --set " + set.string() + " --density 2").status, 3);
  EXPECT_EQ(run("relations --s 6").status, 3);
  EXPECT_EQ(run("weyl --set " + dir.string() + "/missing.txt --point 1/2").status, 2);
}

TEST(Cli, OutputDirectoryNeverOverwrites) {
  const auto dir = scratch("out");
  ASSERT_EQ(run("--out " + dir.string() + " relations --s 2").status, 0);
  ASSERT_EQ(run("--out " + dir.string() + " relations --s 2").status, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "relations-0001.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "relations-0002.json"));
}

TEST(Cli, PipelineConfigAndRecord) {
  const auto dir = scratch("pipeline");
  const auto config = dir / "config.json";
  std::ofstream(config) << R"({"schema":1,"pipeline":"theorem_4_8",)"
                        << R"("source":{"kind":"primes","limit":4096},)"
                        << R"("schedule":{"kind":"linear","cap":true},"trials":4,"tail_start":6})";
  const Result r = run("--config " + config.string() + " --out " + dir.string() + " pipeline");
  EXPECT_TRUE(r.status == 0 || r.status == 4);
  bool found = false;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    found = found || entry.path().filename().string().rfind("theorem_4_8-", 0) == 0;
  }
  EXPECT_TRUE(found);
  std::ofstream(dir / "bad.json") << R"({"schema":1,"color":"red"})";
  EXPECT_EQ(run("--config " + (dir / "bad.json").string() + " pipeline").status, 2);
  EXPECT_EQ(run("--config " + config.string() + " relations --s 2").status, 2);
}
