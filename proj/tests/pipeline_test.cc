// Copyright 2026 The locx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locx/pipeline.h"

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "locx/errors.h"
#include "test_support.h"

namespace locx {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path GoldenDir() { return testing::TestDataDir() / "golden"; }

const Pipeline &Golden() {
  static const PipelineConfig config = PipelineConfig::Load(GoldenDir() / "config.json");
  static const Pipeline pipeline(config, BuildModel(config));
  return pipeline;
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string RunStream(const std::string &input, unsigned workers, std::size_t batch) {
  std::istringstream in(input);
  std::ostringstream out;
  ProcessStream(in, out, Golden().extractor(), workers, batch);
  return out.str();
}

TEST(PipelineConfig, LoadsGoldenConfigRelativeToItsDirectory) {
  const PipelineConfig c = PipelineConfig::Load(GoldenDir() / "config.json");
  ASSERT_EQ(c.gazetteers.size(), 1u);
  EXPECT_TRUE(fs::exists(c.gazetteers[0].path));
  EXPECT_EQ(c.gazetteers[0].format, GazetteerFormat::kGenericJson);
  EXPECT_FALSE(c.spelling_correction);
  EXPECT_EQ(c.partial_tp_credit, 0);
  EXPECT_EQ(c.workers, 1u);
  EXPECT_NO_THROW(c.Validate(true));
}

TEST(PipelineConfig, RejectsInvalidValues) {
  const fs::path base = GoldenDir();
  EXPECT_THROW(PipelineConfig::FromJson(json{{"colour", 1}}, base), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(json{{"bbox", {13.3, 80.0, 12.8, 80.4}}}, base),
               ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(json{{"bbox", {1, 2, 3}}}, base), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(json{{"workers", 0}}, base), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(json{{"eval_mode", "loose"}}, base), ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(json{{"spelling_correction", "yes"}}, base),
               ConfigError);
  EXPECT_THROW(PipelineConfig::FromJson(
                   json{{"gazetteers", {{{"path", "g.json"}, {"format", "kml"}}}}}, base),
               ConfigError);
  const PipelineConfig missing = PipelineConfig::FromJson(
      json{{"gazetteers", {{{"path", "nope.json"}, {"format", "generic_json"}}}}}, base);
  EXPECT_THROW(missing.Validate(true), ConfigError);
  EXPECT_THROW(PipelineConfig::Defaults().Validate(true), ConfigError);
  EXPECT_NO_THROW(PipelineConfig::Defaults().Validate(false));
  EXPECT_THROW(PipelineConfig::Load(base / "absent.json"), ConfigError);
}

TEST(BuildModel, ReportsSkipgramSurfacesWithShippedCategories) {
  const fs::path dir = fs::temp_directory_path() / "locx_build_test";
  fs::create_directories(dir);
  std::ofstream(dir / "g.json")
      << R"([{"id":"s1","name":"Balalok Matriculation Higher Secondary School"}])";
  PipelineConfig config = PipelineConfig::Defaults();
  config.gazetteers.push_back({dir / "g.json", GazetteerFormat::kGenericJson, "x:"});
  GazetteerBuildStats stats;
  const CompiledModel c = BuildModel(config, &stats);
  EXPECT_EQ(c.gazetteer.size(), 8u);
  EXPECT_EQ(stats.variants_by_kind[VariantKind::kSkipgram], 7u);
  for (const std::string &s : c.gazetteer.SortedSurfaces()) {
    EXPECT_TRUE(s.starts_with("balalok ") && s.ends_with(" school")) << s;
    EXPECT_EQ(c.gazetteer.Find(s)->entry_ids, (std::set<std::string>{"x:s1"}));
  }
  fs::remove_all(dir);
}

TEST(ProcessLine, WellFormedRecord) {
  const json out = json::parse(ProcessLine(
      R"({"id":"t1","text":"Didn't Houston have a bad flood"})", 1, Golden().extractor()));
  EXPECT_EQ(out.at("id"), "t1");
  ASSERT_EQ(out.at("mentions").size(), 1u);
  const json &m = out.at("mentions")[0];
  EXPECT_EQ(m.at("surface"), "Houston");
  EXPECT_EQ(m.at("char_start"), 7);
  EXPECT_EQ(m.at("char_end"), 14);
  EXPECT_EQ(m.at("entry_ids"), json::array({"tx-1"}));
  EXPECT_EQ(m.at("from_hashtag"), false);
  EXPECT_EQ(json::parse(ProcessLine(R"({"id":7,"text":""})", 1, Golden().extractor()))
                .at("mentions")
                .size(),
            0u);
}

TEST(ProcessLine, MalformedLinesBecomeErrorRecords) {
  for (const char *line : {"", "not json", "[1,2]", R"({"text":"x"})",
                           R"({"id":"a"})", R"({"id":"a","text":5})",
                           "{\"id\":\"a\",\"text\":\"\xff\"}"}) {
    const json out = json::parse(ProcessLine(line, 9, Golden().extractor()));
    EXPECT_TRUE(out.contains("error")) << line;
    EXPECT_EQ(out.at("line"), 9);
  }
  EXPECT_EQ(json::parse(ProcessLine(R"({"id":"a"})", 2, Golden().extractor())).at("id"),
            "a");
}

TEST(ProcessStream, EmptyInputGivesEmptyOutput) {
  EXPECT_EQ(RunStream("", 4, 8), "");
}

TEST(ProcessStream, OrderAndBytesIndependentOfWorkers) {
  std::mt19937_64 rng(47);
  const std::vector<std::string> golden = Lines(ReadFile(GoldenDir() / "tweets.jsonl"));
  std::string input;
  for (int i = 0; i < 400; ++i) {
    if (i % 37 == 5) {
      input += "garbage line " + std::to_string(i) + "\n";
      continue;
    }
    json rec = json::parse(golden[rng() % golden.size()]);
    rec["id"] = "n" + std::to_string(i);
    input += rec.dump() + "\n";
  }
  const std::string serial = RunStream(input, 1, 1024);
  const std::vector<std::string> out = Lines(serial);
  ASSERT_EQ(out.size(), 400u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const json rec = json::parse(out[i]);
    if (rec.contains("error")) {
      EXPECT_EQ(rec.at("line"), i + 1);
    } else {
      EXPECT_EQ(rec.at("id"), "n" + std::to_string(i));
    }
  }
  for (unsigned workers : {2u, 4u, 8u}) {
    EXPECT_EQ(RunStream(input, workers, 7), serial) << workers;
  }
}

TEST(ProcessStream, ArbitraryBytesNeverAbort) {
  std::mt19937_64 rng(53);
  std::string input;
  for (int i = 0; i < 300; ++i) {
    std::string line;
    if (i % 2 == 0) {
      for (int n = rng() % 80; n > 0; --n) {
        char c = static_cast<char>(rng() % 256);
        if (c == '\n') c = ' ';
        line += c;
      }
    } else {
      std::string text;
      for (int n = rng() % 80; n > 0; --n) text += static_cast<char>(32 + rng() % 95);
      line = json{{"id", std::to_string(i)}, {"text", text}}.dump();
    }
    input += line + "\n";
  }
  const std::vector<std::string> out = Lines(RunStream(input, 3, 16));
  ASSERT_EQ(out.size(), 300u);
  for (const std::string &l : out) EXPECT_NO_THROW(json::parse(l));
}

TEST(Evaluate, GoldenBundleScores) {
  std::istringstream in(ReadFile(GoldenDir() / "tweets.jsonl"));
  std::ostringstream out;
  ProcessStream(in, out, Golden().extractor(), 1);
  const fs::path pred = fs::temp_directory_path() / "locx_golden_pred.jsonl";
  std::ofstream(pred) << out.str();

  const std::vector<GoldDocument> gold = LoadGoldDirectory(GoldenDir() / "gold", true);
  ASSERT_EQ(gold.size(), 3u);
  EXPECT_EQ(gold[1].id, "golden:2");
  EXPECT_EQ(gold[1].annotations.size(), 3u);

  const EvaluationResult r = Evaluate(LoadPredictions(pred), gold, EvalMode::kStandard, 0);
  EXPECT_EQ(r.aggregate.tp, 5);
  EXPECT_EQ(r.aggregate.fp, 0);
  EXPECT_EQ(r.aggregate.fn, 2);
  EXPECT_TRUE(r.missing.empty());
  EXPECT_TRUE(r.unknown.empty());

  auto partial = LoadPredictions(pred);
  partial.erase(partial.begin());
  partial.push_back({"stray", {}});
  const EvaluationResult m = Evaluate(partial, gold, EvalMode::kStandard, 0);
  EXPECT_EQ(m.missing, std::vector<std::string>{"golden:1"});
  EXPECT_EQ(m.unknown, std::vector<std::string>{"stray"});
  EXPECT_EQ(m.documents[0].report.fn, 3);
  fs::remove(pred);
}

}  // namespace
}  // namespace locx
