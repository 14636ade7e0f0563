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

// locx: location mention extraction from short informal texts.
//
//   locx build    --config cfg.json [--model-cache model.bin]
//   locx extract  --config cfg.json [--model-cache model.bin] [--workers N]
//                 [--spell on|off]            < tweets.jsonl > mentions.jsonl
//   locx evaluate [--config cfg.json] --predictions mentions.jsonl
//                 --gold DIR [--bundle] [--eval-mode standard|lnex_strict]
//                 [--format json|table]
//   locx bench    [--config cfg.json] [--variants N] [--tweets N] [--workers N]
//
// Exit status: 0 success, 1 usage or configuration error, 2 data error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "locx/bench.h"
#include "locx/errors.h"
#include "locx/evaluation.h"
#include "locx/model_cache.h"
#include "locx/pipeline.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Flags {
  std::string config;
  std::string model_cache;
  std::optional<unsigned> workers;
  std::string spell;
  std::string eval_mode;
};

locx::PipelineConfig LoadConfig(const Flags &flags) {
  locx::PipelineConfig config = flags.config.empty()
                                    ? locx::PipelineConfig::Defaults()
                                    : locx::PipelineConfig::Load(flags.config);
  if (!flags.model_cache.empty()) config.model_cache = flags.model_cache;
  if (flags.workers) {
    if (*flags.workers == 0) throw locx::ConfigError("--workers must be positive");
    config.workers = *flags.workers;
  }
  if (!flags.spell.empty()) config.spelling_correction = flags.spell == "on";
  if (!flags.eval_mode.empty()) {
    config.eval_mode = locx::ParseEvalMode(flags.eval_mode);
  }
  return config;
}

int RunBuild(const Flags &flags) {
  const locx::PipelineConfig config = LoadConfig(flags);
  if (config.model_cache.empty()) {
    throw locx::ConfigError("no model cache path (set model_cache or --model-cache)");
  }
  locx::GazetteerBuildStats stats;
  const locx::CompiledModel compiled = locx::BuildModel(config, &stats);
  locx::SaveModelCache(config.model_cache, compiled);

  for (const std::string &w : stats.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "entries\t" << compiled.gazetteer.entries().size() << '\n'
            << "entries_without_names\t" << stats.entries_without_names << '\n'
            << "removed_stopnames\t" << stats.removed_stopnames << '\n'
            << "variants\t" << compiled.gazetteer.size() << '\n';
  for (const auto &[kind, count] : stats.variants_by_kind) {
    std::cout << "variants." << locx::VariantKindName(kind) << '\t' << count
              << '\n';
  }
  std::cout << "unigrams\t" << compiled.model.vocabulary().size() << '\n'
            << "bigrams\t" << compiled.model.bigram_count() << '\n'
            << "trigrams\t" << compiled.model.trigram_count() << '\n'
            << "cache\t" << config.model_cache.string() << '\n';
  return 0;
}

int RunExtract(const Flags &flags) {
  const locx::PipelineConfig config = LoadConfig(flags);
  if (config.model_cache.empty()) {
    throw locx::ConfigError("no model cache path (set model_cache or --model-cache)");
  }
  config.Validate(false);
  const locx::Pipeline pipeline(config, locx::LoadModelCache(config.model_cache));

  std::ios::sync_with_stdio(false);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t lines =
      locx::ProcessStream(std::cin, std::cout, pipeline.extractor(), config.workers);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (lines > 0) {
    std::fprintf(stderr, "processed %zu lines in %.3f s (%.1f lines/s)\n", lines,
                 seconds, seconds > 0 ? static_cast<double>(lines) / seconds : 0.0);
  }
  return 0;
}

int RunEvaluate(const Flags &flags, const std::string &predictions,
                const std::string &gold_dir, bool bundle,
                const std::string &format) {
  const locx::PipelineConfig config = LoadConfig(flags);
  const locx::EvaluationResult result = locx::Evaluate(
      locx::LoadPredictions(predictions), locx::LoadGoldDirectory(gold_dir, bundle),
      config.eval_mode, config.partial_tp_credit);

  for (const std::string &id : result.missing) {
    std::cerr << "missing predictions for document " << id << '\n';
  }
  for (const std::string &id : result.unknown) {
    std::cerr << "predictions for unknown document " << id << '\n';
  }
  if (format == "table") {
    std::vector<std::pair<std::string, locx::ScoreReport>> rows;
    for (const locx::DocumentScore &d : result.documents) rows.emplace_back(d.id, d.report);
    rows.emplace_back("(micro)", result.aggregate);
    std::cout << locx::FormatTable(rows);
  } else {
    std::cout << locx::ToJson(result, config.eval_mode).dump(2) << '\n';
  }
  return 0;
}

int RunBench(const Flags &flags, const locx::BenchOptions &options) {
  const locx::PipelineConfig config = LoadConfig(flags);
  locx::BenchOptions opts = options;
  opts.workers = config.workers;
  const locx::BenchResult r = locx::RunBench(opts, config);
  std::fprintf(stderr, "%zu tweets in %.3f s: %.1f tweets/s, peak RSS %.1f MB\n",
               r.tweets, r.extract_seconds, r.tweets_per_second,
               static_cast<double>(r.peak_rss_kb) / 1024.0);
  std::cout << locx::ToJson(r).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Location mention extraction for short informal texts"};
  app.require_subcommand(1);

  Flags flags;
  auto add_common = [&flags](CLI::App *cmd) {
    cmd->add_option("--config", flags.config, "Pipeline configuration (JSON)");
  };

  CLI::App *build = app.add_subcommand("build", "Compile gazetteers into a model cache");
  add_common(build);
  build->add_option("--model-cache", flags.model_cache, "Output cache path");

  CLI::App *extract =
      app.add_subcommand("extract", "Extract mentions from JSON lines on stdin");
  add_common(extract);
  extract->add_option("--model-cache", flags.model_cache, "Model cache path");
  extract->add_option("--workers", flags.workers, "Worker threads");
  extract->add_option("--spell", flags.spell, "Spelling correction")
      ->check(CLI::IsMember({"on", "off"}));

  std::string predictions, gold_dir, format = "json";
  bool bundle = false;
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Score predictions against BRAT annotations");
  add_common(evaluate);
  evaluate->add_option("--predictions", predictions, "Extraction output (JSON lines)")
      ->required();
  evaluate->add_option("--gold", gold_dir, "Directory of .ann/.txt pairs")->required();
  evaluate->add_flag("--bundle", bundle, "Each .txt line is a separate document");
  evaluate->add_option("--eval-mode", flags.eval_mode, "Scoring mode")
      ->check(CLI::IsMember({"standard", "lnex_strict"}));
  evaluate->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));

  locx::BenchOptions bench_options;
  CLI::App *bench = app.add_subcommand("bench", "Measure extraction throughput");
  add_common(bench);
  bench->add_option("--variants", bench_options.variants, "Gazetteer size");
  bench->add_option("--tweets", bench_options.tweets, "Synthetic tweets");
  bench->add_option("--seed", bench_options.seed, "Random seed");
  bench->add_option("--workers", flags.workers, "Worker threads");
  bench->add_option("--spell", flags.spell, "Spelling correction")
      ->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) return RunBuild(flags);
    if (*extract) return RunExtract(flags);
    if (*evaluate) return RunEvaluate(flags, predictions, gold_dir, bundle, format);
    if (*bench) return RunBench(flags, bench_options);
  } catch (const locx::ConfigError &e) {
    std::cerr << "locx: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "locx: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
