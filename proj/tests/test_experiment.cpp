#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lacunary/error.hpp"
#include "lacunary/experiment.hpp"
#include "lacunary/pipeline.hpp"

using namespace lacunary;

namespace {

ExperimentConfig small_config(const std::string& pipeline) {
  ExperimentConfig c;
  c.pipeline = pipeline;
  c.source.limit = 1 << 14;
  c.schedule.cap = true;
  c.trials = 8;
  c.tail_start = 8;
  c.scan.denominators = {64};
  c.scan.irrational_points = 16;
  return c;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lacunary-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Config, RoundTrip) {
  ExperimentConfig c = small_config("theorem_4_8");
  c.source.coefficients = {BigInt(1), BigInt(0), BigInt(2)};
  c.partition.exponents = {1, 2, 6};
  const ExperimentConfig back = config_from_json(parse_json(dump(to_json(c))));
  EXPECT_EQ(dump(to_json(back)), dump(to_json(c)));
  EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(Config, StrictReader) {
  EXPECT_THROW(config_from_json(parse_json(R"({"pipeline":"main_theorem"})")), ParseError);
  EXPECT_THROW(config_from_json(parse_json(R"({"schema":1,"bogus":2})")), ParseError);
  EXPECT_THROW(config_from_json(parse_json(R"({"schema":2})")), ParseError);
  EXPECT_THROW(config_from_json(parse_json(R"({"schema":1,"trials":"many"})")), ParseError);
  EXPECT_THROW(config_from_json(parse_json(R"({"schema":1,"source":{"kind":"primes","x":1}})")),
               ParseError);
  EXPECT_THROW(parse_json("{"), ParseError);
  EXPECT_NO_THROW(config_from_json(parse_json(R"({"schema":1})")));
}

TEST(Config, HashIgnoresThreadsAndOutput) {
  ExperimentConfig a = small_config("theorem_4_8");
  ExperimentConfig b = a;
  b.threads = 7;
  b.output_dir = "/tmp/elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, BuildersFollowSpecs) {
  SourceSpec range;
  range.kind = "range";
  range.limit = 10;
  range.low = -2;
  EXPECT_EQ(build_source(range).size(), 13u);
  SourceSpec circle;
  circle.kind = "circle";
  EXPECT_THROW(build_source(circle), ParseError);
  const IntegerSet primes = generate_primes(1000);
  EXPECT_EQ(build_partition(PartitionSpec{}, primes).last_block(), 10u);
  const BlockDecomposition d = decompose(primes, build_partition(PartitionSpec{}, primes));
  EXPECT_THROW(build_ell(ScheduleSpec{}, d), PreconditionError);
  ScheduleSpec linear;
  linear.cap = true;
  const auto capped = build_ell(linear, d);
  EXPECT_EQ(capped[2], 1u);
  EXPECT_EQ(capped[9], 9u);
}

TEST(Output, NeverOverwrites) {
  const auto dir = temp_dir("out");
  const auto a = write_new_file(dir, "rec", ".json", "a");
  const auto b = write_new_file(dir, "rec", ".json", "b");
  EXPECT_NE(a, b);
  std::ifstream in(a);
  std::string text;
  in >> text;
  EXPECT_EQ(text, "a");
  EXPECT_EQ(a.filename(), "rec-0001.json");
  EXPECT_EQ(b.filename(), "rec-0002.json");
}

TEST(Pipeline, TheoremFourEightRecordShape) {
  const PipelineResult r = run_pipeline(small_config("theorem_4_8"));
  const Json& rec = r.record;
  EXPECT_EQ(rec.at("kind"), "experiment_record");
  EXPECT_TRUE(rec.at("stages").contains("blocks"));
  EXPECT_TRUE(rec.at("verdicts").contains("tail_independence_s2"));
  EXPECT_TRUE(rec.at("verdicts").contains("dependence_bound"));
  EXPECT_FALSE(rec.at("verdicts").contains("psi_decay"));
  EXPECT_FALSE(summarize(rec).empty());
}

TEST(Pipeline, ReproducibleAcrossThreadCounts) {
  ExperimentConfig c = small_config("main_theorem");
  c.threads = 1;
  const Json first = strip_timestamps(run_pipeline(c).record);
  c.threads = 3;
  Json second = strip_timestamps(run_pipeline(c).record);
  second["config"]["threads"] = 1;
  EXPECT_EQ(dump(first), dump(second));
}

TEST(Pipeline, RerunFromPersistedRecord) {
  const auto dir = temp_dir("rerun");
  const PipelineResult r = run_pipeline(small_config("main_theorem"));
  const auto path = write_new_file(dir, "rec", ".json", dump(r.record));
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const ExperimentConfig again = config_from_json(parse_json(text.str()));
  EXPECT_EQ(dump(strip_timestamps(run_pipeline(again).record)), dump(strip_timestamps(r.record)));
}

TEST(Pipeline, MainTheoremRejectsGeometricSource) {
  ExperimentConfig c = small_config("main_theorem");
  c.source.kind = "geometric";
  c.source.k_max = 30;
  EXPECT_THROW(run_pipeline(c), PreconditionError);
}

TEST(Pipeline, NaturalsStayBelowDependenceBound) {
  ExperimentConfig c;
  c.pipeline = "theorem_4_8";
  c.source.kind = "range";
  c.source.limit = 1 << 18;
  c.trials = 40;
  c.tail_start = 16;
  const PipelineResult r = run_pipeline(c);
  EXPECT_TRUE(r.record.at("verdicts").at("dependence_bound").at("pass").get<bool>());
}
