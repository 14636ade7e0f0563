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

#ifndef LOCX_TEXTPREP_H_
#define LOCX_TEXTPREP_H_

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locx/language_model.h"
#include "locx/segmenter.h"
#include "locx/spelling.h"
#include "locx/text_util.h"
#include "locx/tokenizer.h"

namespace locx {

// Tweet stop words for one region. Built from a base list with every
// gazetteer unigram removed, so a word that can start or continue a place
// name never splits a tweet.
class StopList {
 public:
  StopList() = default;
  explicit StopList(WordSet words) : words_(std::move(words)) {}

  static StopList ForRegion(const WordSet &base, const LanguageModel &model);

  bool Contains(std::string_view word) const { return words_.contains(word); }
  const WordSet &words() const { return words_; }
  std::size_t size() const { return words_.size(); }

 private:
  WordSet words_;
};

// Half-open range of token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const TokenRange &other) const = default;
};

// Stop words split a token stream, and so does every non-word token
// (punctuation, hashtags, mentions, emoticons).
bool IsSplitter(const Token &token, const StopList &stoplist);

// Maximal runs of consecutive non-splitter tokens, in order.
std::vector<TokenRange> SplitOnStopwords(std::span<const Token> tokens,
                                         const StopList &stoplist);

struct HashtagExpansion {
  // Segmented words with byte offsets into the raw tweet.
  std::vector<Token> pieces;
  std::vector<TokenRange> splits;
};

struct TweetDocument {
  std::string raw;
  CleanedText cleaned;
  // Offsets into raw.
  std::vector<Token> tokens;
  std::vector<TokenRange> splits;
  // Keyed by the index of the hashtag token.
  std::map<std::size_t, HashtagExpansion> hashtag_expansions;
};

// Cleans, tokenizes, segments hashtags and splits a tweet. With a spelling
// corrector, out-of-vocabulary alphabetic word tokens have their text
// replaced by the correction while keeping their raw offsets.
class TextPreprocessor {
 public:
  TextPreprocessor(StopList stoplist, SegmenterDictionary segmenter,
                   std::shared_ptr<const SpellingCorrector> speller = nullptr);

  TweetDocument Process(std::string_view raw) const;

  const StopList &stoplist() const { return stoplist_; }
  const SegmenterDictionary &segmenter() const { return segmenter_; }
  bool spelling_correction() const { return speller_ != nullptr; }

 private:
  StopList stoplist_;
  SegmenterDictionary segmenter_;
  std::shared_ptr<const SpellingCorrector> speller_;
};

}  // namespace locx

#endif  // LOCX_TEXTPREP_H_
