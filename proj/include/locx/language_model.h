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

#ifndef LOCX_LANGUAGE_MODEL_H_
#define LOCX_LANGUAGE_MODEL_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "locx/gazetteer.h"
#include "locx/text_util.h"

namespace locx {

using TokenId = std::uint32_t;

// Successor counts for one conditioning context, sorted by token id.
struct SuccessorRow {
  std::vector<std::pair<TokenId, std::uint64_t>> counts;
  std::uint64_t total = 0;

  std::uint64_t Count(TokenId next) const;
};

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// Unigram, bigram and trigram counts over the tokenized variant surfaces of
// a gazetteer, with maximum-likelihood conditional distributions and no
// smoothing: any unseen event has probability exactly zero.
//
//   P1(w)          = c(w) / total unigrams
//   P(w2 | w1)     = c(w1 w2) / sum_z c(w1 z)
//   P(w3 | w1 w2)  = c(w1 w2 w3) / sum_z c(w1 w2 z)
//   P(w1..wn)      = P1(w1) P(w2|w1) prod_{i>=3} P(wi | w(i-2) w(i-1))
//
// Probabilities are accumulated in log space; kLogZero stands for zero.
// Immutable once built and safe to share between threads.
class LanguageModel {
 public:
  LanguageModel() = default;

  // Throws DataError if the gazetteer is empty.
  static LanguageModel Compute(const Gazetteer &gazetteer);

  // Counts every distinct surface once; each surface is tokenized with the
  // gazetteer tokenizer. Throws DataError if |surfaces| is empty.
  static LanguageModel FromSurfaces(const std::vector<std::string> &surfaces);

  // Raw tables, as restored from a model cache. Throws DataError if they are
  // inconsistent.
  static LanguageModel FromTables(
      std::vector<std::string> vocabulary, std::vector<std::uint64_t> unigrams,
      std::vector<SuccessorRow> bigram_rows,
      std::unordered_map<std::uint64_t, SuccessorRow> trigram_rows);

  std::optional<TokenId> Lookup(std::string_view token) const;
  const std::string &Token(TokenId id) const { return vocabulary_[id]; }
  bool Contains(std::string_view token) const { return index_.contains(token); }

  // Per-factor log probabilities; kLogZero when unseen.
  double LogUnigram(TokenId w) const;
  double LogBigram(TokenId w1, TokenId w2) const;
  double LogTrigram(TokenId w1, TokenId w2, TokenId w3) const;

  // The chain for n >= 1 tokens. Throws std::invalid_argument for n = 0.
  double SequenceLogProbability(std::span<const std::string> tokens) const;
  double SequenceProbability(std::span<const std::string> tokens) const;

  // Tokenizes |s| with the gazetteer tokenizer and tests P > 0. Empty or
  // whitespace-only strings are not n-grams.
  bool ValidNGram(std::string_view s) const;

  std::uint64_t UnigramCount(std::string_view w) const;
  std::uint64_t BigramCount(std::string_view w1, std::string_view w2) const;
  std::uint64_t TrigramCount(std::string_view w1, std::string_view w2,
                             std::string_view w3) const;
  std::uint64_t total_unigrams() const { return total_unigrams_; }

  const std::vector<std::string> &vocabulary() const { return vocabulary_; }
  const std::vector<std::uint64_t> &unigram_counts() const { return unigrams_; }
  const std::vector<SuccessorRow> &bigram_rows() const { return bigram_rows_; }
  const std::unordered_map<std::uint64_t, SuccessorRow> &trigram_rows() const {
    return trigram_rows_;
  }

  std::size_t bigram_count() const;
  std::size_t trigram_count() const;

  static std::uint64_t ContextKey(TokenId w1, TokenId w2) {
    return (static_cast<std::uint64_t>(w1) << 32) | w2;
  }

 private:
  void BuildIndex();

  std::vector<std::string> vocabulary_;  // sorted; position is the TokenId
  StringMap<TokenId> index_;
  std::vector<std::uint64_t> unigrams_;
  std::uint64_t total_unigrams_ = 0;
  std::vector<SuccessorRow> bigram_rows_;  // indexed by w1
  std::unordered_map<std::uint64_t, SuccessorRow> trigram_rows_;
};

}  // namespace locx

#endif  // LOCX_LANGUAGE_MODEL_H_
