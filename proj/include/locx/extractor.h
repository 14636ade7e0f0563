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

#ifndef LOCX_EXTRACTOR_H_
#define LOCX_EXTRACTOR_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locx/gazetteer.h"
#include "locx/language_model.h"
#include "locx/text_util.h"
#include "locx/textprep.h"

namespace locx {

// Abbreviation <-> expansion pairs, queried in both directions.
class AbbreviationDictionary {
 public:
  AbbreviationDictionary() = default;

  // Reads "abbreviation<TAB>expansion" lines; '#' comments allowed.
  static AbbreviationDictionary Load(const std::filesystem::path &path);

  void Add(std::string_view abbreviation, std::string_view expansion);

  // Expansions of |token| followed by abbreviations of it, deduplicated.
  std::vector<std::string> Images(std::string_view token) const;

  std::size_t size() const { return pairs_; }

 private:
  StringMap<std::vector<std::string>> forward_;
  StringMap<std::vector<std::string>> backward_;
  std::size_t pairs_ = 0;
};

struct TokenSynonymVector {
  std::string original;
  // The original first, then its dictionary images.
  std::vector<std::string> alternatives;
};

TokenSynonymVector ExpandToken(std::string_view token,
                               const AbbreviationDictionary &suffixes,
                               const AbbreviationDictionary &osm_abbreviations);

// A gazetteer name found in a fragment: token range within the fragment and
// the alternative chosen at every position.
struct CandidateMatch {
  TokenRange range;
  std::vector<std::string> tokens;
  std::string surface;

  bool operator==(const CandidateMatch &other) const = default;
};

struct SearchStats {
  // Alternative sequences scored against the language model.
  std::size_t nodes_explored = 0;
  // Most sequences scored for any single token span.
  std::size_t max_span_evaluations = 0;
  // Spans whose evaluations exceeded |v|^s, with |v| the longest synonym
  // vector in the fragment and s the number of span tokens with synonyms.
  std::size_t bound_violations = 0;
  std::size_t max_vector_size = 0;
};

// Builds the tree of valid n-grams over a fragment bottom-up: every
// alternative known to the model starts a path, and a path is extended by
// the next position's alternatives only while the sequence probability stays
// above zero. Paths whose joined surface is a gazetteer variant are returned.
std::vector<CandidateMatch> FindValidNGrams(
    std::span<const TokenSynonymVector> fragment, const LanguageModel &model,
    const Gazetteer &gazetteer, SearchStats *stats = nullptr);

// Longest candidates win over candidates they overlap; overlapping
// candidates of equal token length are all kept. Result is ordered by range
// start, then surface.
std::vector<CandidateMatch> ResolveOverlaps(
    std::vector<CandidateMatch> candidates);

struct LocationMention {
  // Raw text of the mention; for hashtags the segmented sub-span.
  std::string surface;
  std::string matched_name;
  // Code point offsets into the raw tweet; hashtag mentions cover the whole
  // hashtag including '#'.
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  std::vector<std::string> entry_ids;
  bool from_hashtag = false;

  bool operator==(const LocationMention &other) const = default;
};

// Candidates of one fragment before overlap resolution.
struct FragmentCandidates {
  std::vector<TokenSynonymVector> vectors;
  std::vector<CandidateMatch> candidates;
  bool from_hashtag = false;
  // Index of the hashtag token when from_hashtag.
  std::size_t hashtag_token = 0;
  TokenRange range;
};

struct ExtractionStats {
  SearchStats search;
  std::size_t fragments = 0;
  std::size_t candidates = 0;
};

// Extracts location mentions from tweets. Holds references to shared,
// immutable resources; Extract is const and safe to call concurrently.
class Extractor {
 public:
  Extractor(const Gazetteer &gazetteer, const LanguageModel &model,
            const TextPreprocessor &preprocessor,
            const AbbreviationDictionary &suffixes,
            const AbbreviationDictionary &osm_abbreviations);

  std::vector<LocationMention> Extract(std::string_view raw,
                                       ExtractionStats *stats = nullptr) const;
  std::vector<LocationMention> Extract(const TweetDocument &doc,
                                       ExtractionStats *stats = nullptr) const;

  std::vector<FragmentCandidates> Candidates(const TweetDocument &doc,
                                             SearchStats *stats = nullptr) const;

  const TextPreprocessor &preprocessor() const { return preprocessor_; }
  const Gazetteer &gazetteer() const { return gazetteer_; }
  const LanguageModel &model() const { return model_; }

 private:
  const Gazetteer &gazetteer_;
  const LanguageModel &model_;
  const TextPreprocessor &preprocessor_;
  const AbbreviationDictionary &suffixes_;
  const AbbreviationDictionary &osm_;
};

}  // namespace locx

#endif  // LOCX_EXTRACTOR_H_
