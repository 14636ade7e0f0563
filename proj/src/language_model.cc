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

#include "locx/language_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "locx/errors.h"
#include "locx/tokenizer.h"

namespace locx {
namespace {

std::vector<std::string> GazetteerTokens(std::string_view surface) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(surface)) out.push_back(std::move(t.text));
  return out;
}

void Finish(SuccessorRow *row) {
  std::sort(row->counts.begin(), row->counts.end());
  row->total = 0;
  for (const auto &[id, c] : row->counts) row->total += c;
}

}  // namespace

std::uint64_t SuccessorRow::Count(TokenId next) const {
  auto it = std::lower_bound(
      counts.begin(), counts.end(), next,
      [](const std::pair<TokenId, std::uint64_t> &e, TokenId id) {
        return e.first < id;
      });
  return (it != counts.end() && it->first == next) ? it->second : 0;
}

LanguageModel LanguageModel::Compute(const Gazetteer &gazetteer) {
  if (gazetteer.empty()) {
    throw DataError("cannot compute a language model from an empty gazetteer");
  }
  return FromSurfaces(gazetteer.SortedSurfaces());
}

LanguageModel LanguageModel::FromSurfaces(
    const std::vector<std::string> &surfaces) {
  const std::set<std::string> distinct(surfaces.begin(), surfaces.end());
  std::vector<std::vector<std::string>> tokenized;
  std::set<std::string> vocab;
  for (const std::string &s : distinct) {
    std::vector<std::string> tokens = GazetteerTokens(s);
    if (tokens.empty()) continue;
    vocab.insert(tokens.begin(), tokens.end());
    tokenized.push_back(std::move(tokens));
  }
  if (tokenized.empty()) {
    throw DataError("cannot compute a language model without names");
  }

  LanguageModel model;
  model.vocabulary_.assign(vocab.begin(), vocab.end());
  model.BuildIndex();
  model.unigrams_.assign(model.vocabulary_.size(), 0);

  std::vector<std::map<TokenId, std::uint64_t>> bigrams(
      model.vocabulary_.size());
  std::map<std::uint64_t, std::map<TokenId, std::uint64_t>> trigrams;
  for (const std::vector<std::string> &tokens : tokenized) {
    std::vector<TokenId> ids;
    for (const std::string &t : tokens) ids.push_back(model.index_.at(t));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ++model.unigrams_[ids[i]];
      if (i + 1 < ids.size()) ++bigrams[ids[i]][ids[i + 1]];
      if (i + 2 < ids.size()) ++trigrams[ContextKey(ids[i], ids[i + 1])][ids[i + 2]];
    }
  }
  for (std::uint64_t c : model.unigrams_) model.total_unigrams_ += c;

  model.bigram_rows_.resize(model.vocabulary_.size());
  for (std::size_t w1 = 0; w1 < bigrams.size(); ++w1) {
    SuccessorRow &row = model.bigram_rows_[w1];
    row.counts.assign(bigrams[w1].begin(), bigrams[w1].end());
    Finish(&row);
  }
  for (const auto &[key, successors] : trigrams) {
    SuccessorRow &row = model.trigram_rows_[key];
    row.counts.assign(successors.begin(), successors.end());
    Finish(&row);
  }
  return model;
}

LanguageModel LanguageModel::FromTables(
    std::vector<std::string> vocabulary, std::vector<std::uint64_t> unigrams,
    std::vector<SuccessorRow> bigram_rows,
    std::unordered_map<std::uint64_t, SuccessorRow> trigram_rows) {
  const std::size_t n = vocabulary.size();
  if (n == 0 || unigrams.size() != n || bigram_rows.size() != n) {
    throw DataError("language model tables have inconsistent sizes");
  }
  if (!std::is_sorted(vocabulary.begin(), vocabulary.end()) ||
      std::adjacent_find(vocabulary.begin(), vocabulary.end()) !=
          vocabulary.end()) {
    throw DataError("language model vocabulary is not sorted and unique");
  }
  auto check_row = [n](SuccessorRow &row) {
    for (const auto &[id, c] : row.counts) {
      if (id >= n || c == 0) throw DataError("invalid successor entry");
    }
    Finish(&row);
  };
  LanguageModel model;
  model.vocabulary_ = std::move(vocabulary);
  model.unigrams_ = std::move(unigrams);
  for (std::uint64_t c : model.unigrams_) {
    if (c == 0) throw DataError("vocabulary token with zero count");
    model.total_unigrams_ += c;
  }
  for (SuccessorRow &row : bigram_rows) check_row(row);
  for (auto &[key, row] : trigram_rows) {
    if ((key >> 32) >= n || (key & 0xffffffffu) >= n) {
      throw DataError("invalid trigram context");
    }
    check_row(row);
  }
  model.bigram_rows_ = std::move(bigram_rows);
  model.trigram_rows_ = std::move(trigram_rows);
  model.BuildIndex();
  return model;
}

void LanguageModel::BuildIndex() {
  index_.clear();
  index_.reserve(vocabulary_.size());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    index_.emplace(vocabulary_[i], static_cast<TokenId>(i));
  }
}

std::optional<TokenId> LanguageModel::Lookup(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double LanguageModel::LogUnigram(TokenId w) const {
  return std::log(static_cast<double>(unigrams_[w])) -
         std::log(static_cast<double>(total_unigrams_));
}

double LanguageModel::LogBigram(TokenId w1, TokenId w2) const {
  const SuccessorRow &row = bigram_rows_[w1];
  const std::uint64_t c = row.Count(w2);
  if (c == 0) return kLogZero;
  return std::log(static_cast<double>(c)) -
         std::log(static_cast<double>(row.total));
}

double LanguageModel::LogTrigram(TokenId w1, TokenId w2, TokenId w3) const {
  auto it = trigram_rows_.find(ContextKey(w1, w2));
  if (it == trigram_rows_.end()) return kLogZero;
  const std::uint64_t c = it->second.Count(w3);
  if (c == 0) return kLogZero;
  return std::log(static_cast<double>(c)) -
         std::log(static_cast<double>(it->second.total));
}

double LanguageModel::SequenceLogProbability(
    std::span<const std::string> tokens) const {
  if (tokens.empty()) {
    throw std::invalid_argument("sequence probability of an empty sequence");
  }
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const std::string &t : tokens) {
    const std::optional<TokenId> id = Lookup(t);
    if (!id) return kLogZero;
    ids.push_back(*id);
  }
  double logp = LogUnigram(ids[0]);
  for (std::size_t i = 1; i < ids.size() && logp != kLogZero; ++i) {
    logp += i == 1 ? LogBigram(ids[0], ids[1])
                   : LogTrigram(ids[i - 2], ids[i - 1], ids[i]);
  }
  return logp;
}

double LanguageModel::SequenceProbability(
    std::span<const std::string> tokens) const {
  const double logp = SequenceLogProbability(tokens);
  return logp == kLogZero ? 0.0 : std::exp(logp);
}

bool LanguageModel::ValidNGram(std::string_view s) const {
  const std::vector<std::string> tokens = GazetteerTokens(CaseFold(s));
  if (tokens.empty()) return false;
  return SequenceLogProbability(tokens) != kLogZero;
}

std::uint64_t LanguageModel::UnigramCount(std::string_view w) const {
  const std::optional<TokenId> id = Lookup(w);
  return id ? unigrams_[*id] : 0;
}

std::uint64_t LanguageModel::BigramCount(std::string_view w1,
                                         std::string_view w2) const {
  const std::optional<TokenId> a = Lookup(w1);
  const std::optional<TokenId> b = Lookup(w2);
  if (!a || !b) return 0;
  return bigram_rows_[*a].Count(*b);
}

std::uint64_t LanguageModel::TrigramCount(std::string_view w1,
                                          std::string_view w2,
                                          std::string_view w3) const {
  const std::optional<TokenId> a = Lookup(w1);
  const std::optional<TokenId> b = Lookup(w2);
  const std::optional<TokenId> c = Lookup(w3);
  if (!a || !b || !c) return 0;
  auto it = trigram_rows_.find(ContextKey(*a, *b));
  return it == trigram_rows_.end() ? 0 : it->second.Count(*c);
}

std::size_t LanguageModel::bigram_count() const {
  std::size_t n = 0;
  for (const SuccessorRow &row : bigram_rows_) n += row.counts.size();
  return n;
}

std::size_t LanguageModel::trigram_count() const {
  std::size_t n = 0;
  for (const auto &[key, row] : trigram_rows_) n += row.counts.size();
  return n;
}

}  // namespace locx
