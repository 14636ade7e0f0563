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

#include "locx/bench.h"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "locx/errors.h"
#include "locx/text_util.h"

namespace locx {
namespace {

const char *const kOnsets[] = {"b", "ch", "d", "g", "k", "l", "m", "n", "p",
                               "r", "s", "t", "v", "th", "kr", "sh"};
const char *const kVowels[] = {"a", "e", "i", "o", "u", "aa", "ee", "ai"};
const char *const kCodas[] = {"", "", "", "n", "m", "r", "l", "s", "k"};
const char *const kCategories[] = {"street", "road",   "nagar",  "school",
                                   "park",   "avenue", "colony", "temple",
                                   "lake",   "bridge", "hospital"};
const char *const kEmoticons[] = {":)", ":(", ":D", ";)"};

std::string PseudoWord(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> syllables(2, 3);
  std::string w;
  for (int i = syllables(rng); i > 0; --i) {
    w += kOnsets[rng() % std::size(kOnsets)];
    w += kVowels[rng() % std::size(kVowels)];
    w += kCodas[rng() % std::size(kCodas)];
  }
  return w;
}

std::vector<std::string> LoadCommonWords(const PipelineConfig &config,
                                         std::size_t limit) {
  std::vector<std::string> out;
  std::ifstream in(config.assets.english_unigrams);
  std::string line;
  while (out.size() < limit && std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line.substr(0, line.find('\t')));
  }
  if (out.empty()) throw DataError("frequency list is empty");
  return out;
}

}  // namespace

std::size_t PeakRssKb() {
  struct rusage usage {};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::size_t>(usage.ru_maxrss);
}

std::vector<GazetteerEntry> SyntheticGazetteer(std::size_t min_variants,
                                               std::uint64_t seed,
                                               const PipelineConfig &config) {
  std::mt19937_64 rng(seed);
  const WordSet stopnames = ReadWordList(config.assets.stopnames);
  const WordSet phrases = ReadWordList(config.assets.bracket_phrases);
  const WordSet categories = ReadWordList(config.assets.category_words);

  std::vector<GazetteerEntry> entries;
  std::size_t batch = std::max<std::size_t>(min_variants / 2, 16);
  for (;;) {
    for (std::size_t i = 0; i < batch; ++i) {
      const int words = 1 + static_cast<int>(rng() % 3);
      std::string name;
      for (int w = 0; w < words; ++w) {
        if (w > 0) name.push_back(' ');
        name += PseudoWord(rng);
      }
      if (rng() % 3 != 0) {
        name += ' ';
        name += kCategories[rng() % std::size(kCategories)];
      }
      GazetteerEntry e;
      e.id = "syn" + std::to_string(entries.size());
      e.canonical_name = std::move(name);
      e.latitude = -90.0 + static_cast<double>(rng() % 18000) / 100.0;
      e.longitude = -180.0 + static_cast<double>(rng() % 36000) / 100.0;
      entries.push_back(std::move(e));
    }
    const std::size_t have =
        Gazetteer::Build(entries, stopnames, phrases, categories).size();
    if (have >= min_variants) return entries;
    batch = std::max<std::size_t>((min_variants - have) / 2, 16);
  }
}

std::vector<std::string> SyntheticTweets(const Gazetteer &gazetteer,
                                         std::size_t count, std::uint64_t seed,
                                         const PipelineConfig &config) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> common = LoadCommonWords(config, 3000);
  const std::vector<std::string> names = gazetteer.SortedSurfaces();
  std::vector<std::string> stops;
  for (const std::string &w : ReadWordList(config.assets.stopwords)) {
    stops.push_back(w);
  }
  std::sort(stops.begin(), stops.end());

  auto pick = [&rng](const std::vector<std::string> &v) -> const std::string & {
    return v[rng() % v.size()];
  };
  auto capitalize = [](std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] -= 32;
    return s;
  };

  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::ostringstream text;
    const int tokens = 10 + static_cast<int>(rng() % 14);
    for (int i = 0; i < tokens; ++i) {
      if (i > 0) text << ' ';
      const unsigned roll = static_cast<unsigned>(rng() % 100);
      if (roll < 45) {
        text << pick(common);
      } else if (roll < 70) {
        text << pick(stops);
      } else if (roll < 82) {
        std::string name = pick(names);
        if (rng() % 2 == 0) {
          for (const char *cat : {" road", " street", " avenue"}) {
            if (name.ends_with(cat)) {
              name.resize(name.size() - std::string_view(cat).size());
              name += rng() % 2 ? " rd" : " st";
            }
          }
        }
        text << (rng() % 2 ? capitalize(name) : name);
      } else if (roll < 88) {
        std::string tag = "#";
        for (const std::string &w : SplitWhitespace(pick(rng() % 2 ? names : common))) {
          tag += capitalize(w);
        }
        text << tag;
      } else if (roll < 92) {
        text << '@' << PseudoWord(rng);
      } else if (roll < 94) {
        text << "https://t.co/" << PseudoWord(rng);
      } else if (roll < 96) {
        text << kEmoticons[rng() % std::size(kEmoticons)];
      } else {
        text << pick(common) << (rng() % 2 ? "." : ",");
      }
    }
    nlohmann::ordered_json rec;
    rec["id"] = "t" + std::to_string(t);
    rec["text"] = text.str();
    out.push_back(rec.dump());
  }
  return out;
}

BenchResult RunBench(const BenchOptions &options, const PipelineConfig &config) {
  using Clock = std::chrono::steady_clock;
  config.Validate(false);
  BenchResult result;

  const auto build_start = Clock::now();
  std::vector<GazetteerEntry> entries =
      SyntheticGazetteer(options.variants, options.seed, config);
  CompiledModel compiled;
  compiled.gazetteer = Gazetteer::Build(
      entries, ReadWordList(config.assets.stopnames),
      ReadWordList(config.assets.bracket_phrases),
      ReadWordList(config.assets.category_words));
  compiled.model = LanguageModel::Compute(compiled.gazetteer);
  result.entries = entries.size();
  result.variants = compiled.gazetteer.size();
  entries.clear();
  entries.shrink_to_fit();
  const std::vector<std::string> tweets = SyntheticTweets(
      compiled.gazetteer, options.tweets, options.seed + 1, config);
  const Pipeline pipeline(config, std::move(compiled));
  result.build_seconds =
      std::chrono::duration<double>(Clock::now() - build_start).count();

  std::string input;
  for (const std::string &t : tweets) input += t + '\n';
  std::istringstream in(input);
  std::ostringstream out;
  const auto start = Clock::now();
  result.tweets = ProcessStream(in, out, pipeline.extractor(), options.workers);
  result.extract_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  result.tweets_per_second =
      result.extract_seconds > 0
          ? static_cast<double>(result.tweets) / result.extract_seconds
          : 0;

  const std::string output = out.str();
  for (std::size_t pos = output.find("\"matched_name\""); pos != std::string::npos;
       pos = output.find("\"matched_name\"", pos + 1)) {
    ++result.mentions;
  }
  result.peak_rss_kb = PeakRssKb();
  return result;
}

nlohmann::ordered_json ToJson(const BenchResult &r) {
  nlohmann::ordered_json j;
  j["entries"] = r.entries;
  j["variants"] = r.variants;
  j["tweets"] = r.tweets;
  j["mentions"] = r.mentions;
  j["build_seconds"] = r.build_seconds;
  j["extract_seconds"] = r.extract_seconds;
  j["tweets_per_second"] = r.tweets_per_second;
  j["peak_rss_mb"] = static_cast<double>(r.peak_rss_kb) / 1024.0;
  return j;
}

}  // namespace locx
