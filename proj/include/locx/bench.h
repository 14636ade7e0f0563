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

#ifndef LOCX_BENCH_H_
#define LOCX_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "locx/gazetteer.h"
#include "locx/pipeline.h"

namespace locx {

struct BenchOptions {
  std::size_t variants = 50000;
  std::size_t tweets = 10000;
  std::uint64_t seed = 20170801;
  unsigned workers = 1;
};

struct BenchResult {
  std::size_t entries = 0;
  std::size_t variants = 0;
  std::size_t tweets = 0;
  std::size_t mentions = 0;
  double build_seconds = 0;
  double extract_seconds = 0;
  double tweets_per_second = 0;
  std::size_t peak_rss_kb = 0;
};

// Synthetic place names built from pseudo-words and category words; grows
// until the compiled gazetteer has at least |min_variants| surfaces.
std::vector<GazetteerEntry> SyntheticGazetteer(std::size_t min_variants,
                                               std::uint64_t seed,
                                               const PipelineConfig &config);

// JSON lines {"id","text"} mixing common words, stop words, place names,
// abbreviations, hashtags, mentions and URLs.
std::vector<std::string> SyntheticTweets(const Gazetteer &gazetteer,
                                         std::size_t count, std::uint64_t seed,
                                         const PipelineConfig &config);

// Peak resident set size of this process, in KiB.
std::size_t PeakRssKb();

BenchResult RunBench(const BenchOptions &options, const PipelineConfig &config);

nlohmann::ordered_json ToJson(const BenchResult &result);

}  // namespace locx

#endif  // LOCX_BENCH_H_
