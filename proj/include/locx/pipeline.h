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

#ifndef LOCX_PIPELINE_H_
#define LOCX_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "locx/evaluation.h"
#include "locx/extractor.h"
#include "locx/gazetteer_io.h"
#include "locx/model_cache.h"
#include "locx/segmenter.h"
#include "locx/spelling.h"
#include "locx/textprep.h"

namespace locx {

struct GazetteerSourceConfig {
  std::filesystem::path path;
  GazetteerFormat format = GazetteerFormat::kGenericJson;
  // Prepended to every entry id, to keep ids unique across sources.
  std::string id_prefix;
};

struct AssetPaths {
  std::filesystem::path stopwords;
  std::filesystem::path english_unigrams;
  std::filesystem::path category_words;
  std::filesystem::path bracket_phrases;
  std::filesystem::path stopnames;
  std::filesystem::path street_suffixes;
  std::filesystem::path osm_abbreviations;
};

struct PipelineConfig {
  std::vector<GazetteerSourceConfig> gazetteers;
  std::optional<BoundingBox> bbox;
  std::filesystem::path asset_dir;
  AssetPaths assets;
  bool spelling_correction = false;
  int max_edit_distance = 2;
  double partial_tp_credit = 0;
  EvalMode eval_mode = EvalMode::kStandard;
  unsigned workers = 1;
  std::filesystem::path model_cache;

  // Relative paths are resolved against |base_dir|; asset names against the
  // asset directory. Throws ConfigError on invalid values.
  static PipelineConfig FromJson(const nlohmann::json &json,
                                 const std::filesystem::path &base_dir);
  static PipelineConfig Load(const std::filesystem::path &path);
  // No gazetteers; assets from the default asset directory.
  static PipelineConfig Defaults();

  // Checks that every referenced file exists.
  void Validate(bool need_gazetteers) const;
};

// Asset root: $LOCX_ASSET_DIR if set, else the compiled-in data directory.
std::filesystem::path DefaultAssetDir();

// Loads, filters and augments the configured gazetteers, then compiles the
// language model.
CompiledModel BuildModel(const PipelineConfig &config,
                         GazetteerBuildStats *stats = nullptr);

// Owns every resource the extractor references. Not movable, since the
// extractor keeps references into it.
class Pipeline {
 public:
  Pipeline(const PipelineConfig &config, CompiledModel compiled);
  Pipeline(const Pipeline &) = delete;
  Pipeline &operator=(const Pipeline &) = delete;

  const Extractor &extractor() const { return extractor_; }
  const CompiledModel &compiled() const { return compiled_; }
  const PipelineConfig &config() const { return config_; }

 private:
  PipelineConfig config_;
  CompiledModel compiled_;
  AbbreviationDictionary suffixes_;
  AbbreviationDictionary osm_;
  TextPreprocessor preprocessor_;
  Extractor extractor_;
};

nlohmann::ordered_json MentionToJson(const LocationMention &mention);

// Turns one input line {"id", "text"} into one output record. Malformed
// input yields {"id", "line", "error"} instead of throwing.
std::string ProcessLine(std::string_view line, std::size_t line_no,
                        const Extractor &extractor);

// Streams JSON lines from |in| to |out| through |workers| threads. Lines are
// read in batches, so memory does not grow with the stream; output order
// always equals input order. Returns the number of lines processed.
std::size_t ProcessStream(std::istream &in, std::ostream &out,
                          const Extractor &extractor, unsigned workers,
                          std::size_t batch_size = 1024);

struct DocumentScore {
  std::string id;
  ScoreReport report;
};

struct EvaluationResult {
  std::vector<DocumentScore> documents;
  ScoreReport aggregate;
  // Gold documents without predictions (scored as all false negatives).
  std::vector<std::string> missing;
  // Prediction ids with no gold document (not scored).
  std::vector<std::string> unknown;
};

struct GoldDocument {
  std::string id;
  std::string text;
  std::vector<GoldAnnotation> annotations;
};

// Reads every .ann/.txt pair under |dir|. In bundle mode each line of a .txt
// is a separate document with id "<stem>:<line>" (1-based) and annotation
// offsets are rebased to the line start.
std::vector<GoldDocument> LoadGoldDirectory(const std::filesystem::path &dir,
                                            bool bundle);

// Reads extraction records (as written by ProcessStream), keyed by id.
std::vector<std::pair<std::string, std::vector<LocationMention>>>
LoadPredictions(const std::filesystem::path &path);

EvaluationResult Evaluate(
    const std::vector<std::pair<std::string, std::vector<LocationMention>>>
        &predictions,
    const std::vector<GoldDocument> &gold, EvalMode mode,
    double partial_tp_credit);

nlohmann::ordered_json ToJson(const EvaluationResult &result, EvalMode mode);

}  // namespace locx

#endif  // LOCX_PIPELINE_H_
