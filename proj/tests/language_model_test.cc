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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "locx/errors.h"
#include "test_support.h"

namespace locx {
namespace {

using testing::GazetteerOf;

std::vector<std::string> T(std::string_view s) { return SplitWhitespace(s); }

TEST(LanguageModel, CountsForSingleBigramName) {
  const LanguageModel lm = LanguageModel::Compute(GazetteerOf({"Texas Ave"}));
  EXPECT_EQ(lm.UnigramCount("texas"), 1u);
  EXPECT_EQ(lm.UnigramCount("ave"), 1u);
  EXPECT_EQ(lm.BigramCount("texas", "ave"), 1u);
  EXPECT_EQ(lm.bigram_count(), 1u);
  EXPECT_EQ(lm.trigram_count(), 0u);
  EXPECT_TRUE(lm.ValidNGram("texas ave"));
}

TEST(LanguageModel, SingleUnigramHasEmptyDistributions) {
  const LanguageModel lm = LanguageModel::Compute(GazetteerOf({"a"}));
  EXPECT_EQ(lm.UnigramCount("a"), 1u);
  EXPECT_EQ(lm.bigram_count(), 0u);
  EXPECT_EQ(lm.trigram_count(), 0u);
  EXPECT_DOUBLE_EQ(lm.SequenceProbability(T("a")), 1.0);
}

TEST(LanguageModel, HandComputedToyModel) {
  const LanguageModel lm =
      LanguageModel::Compute(GazetteerOf({"new york", "york road"}));
  const TokenId n = *lm.Lookup("new"), y = *lm.Lookup("york"), r = *lm.Lookup("road");
  EXPECT_DOUBLE_EQ(std::exp(lm.LogUnigram(y)), 2.0 / 4.0);
  EXPECT_DOUBLE_EQ(std::exp(lm.LogBigram(n, y)), 1.0);
  // The york row holds a single successor, so it carries all the mass.
  EXPECT_DOUBLE_EQ(std::exp(lm.LogBigram(y, r)), 1.0);
  EXPECT_DOUBLE_EQ(lm.SequenceProbability(T("new york")), 0.25);
  EXPECT_EQ(lm.SequenceProbability(T("new road")), 0.0);
}

TEST(LanguageModel, UnseenTokensGiveExactZero) {
  const LanguageModel lm = LanguageModel::Compute(GazetteerOf({"texas ave", "main street"}));
  EXPECT_EQ(lm.SequenceProbability(T("is")), 0.0);
  EXPECT_EQ(lm.SequenceLogProbability(T("texas is")), kLogZero);
  EXPECT_FALSE(lm.ValidNGram("is closed"));
  EXPECT_FALSE(lm.ValidNGram(""));
  EXPECT_FALSE(lm.ValidNGram("   "));
}

TEST(LanguageModel, ErrorsOnEmptyInput) {
  const LanguageModel lm = LanguageModel::Compute(GazetteerOf({"x"}));
  EXPECT_THROW(lm.SequenceProbability({}), std::invalid_argument);
  EXPECT_THROW(LanguageModel::Compute(Gazetteer()), DataError);
}

TEST(LanguageModel, DistinctSurfacesCountOnce) {
  // Two entries share one surface; counts come from the variant mapping.
  const LanguageModel lm = LanguageModel::Compute(GazetteerOf({"Adyar", "adyar", "adyar bridge"}));
  EXPECT_EQ(lm.UnigramCount("adyar"), 2u);
}

class LanguageModelProperties : public ::testing::TestWithParam<int> {};

TEST_P(LanguageModelProperties, ClosureNormalizationAndRecount) {
  std::mt19937_64 rng(1000 + GetParam());
  const std::vector<std::string> vocab = {"north", "anna", "nagar", "road",
                                          "west", "lake", "view"};
  const Gazetteer g = GazetteerOf(testing::RandomToyNames(rng, vocab, 20, 5));
  const LanguageModel lm = LanguageModel::Compute(g);
  const testing::RecountModel oracle(g.SortedSurfaces());

  double p1 = 0;
  for (TokenId w = 0; w < lm.vocabulary().size(); ++w) p1 += std::exp(lm.LogUnigram(w));
  EXPECT_NEAR(p1, 1.0, 1e-9);
  for (TokenId w1 = 0; w1 < lm.vocabulary().size(); ++w1) {
    const SuccessorRow &row = lm.bigram_rows()[w1];
    if (row.counts.empty()) continue;
    double sum = 0;
    for (const auto &[w2, c] : row.counts) sum += std::exp(lm.LogBigram(w1, w2));
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  for (const auto &[key, row] : lm.trigram_rows()) {
    const TokenId w1 = static_cast<TokenId>(key >> 32);
    const TokenId w2 = static_cast<TokenId>(key & 0xffffffffu);
    double sum = 0;
    for (const auto &[w3, c] : row.counts) sum += std::exp(lm.LogTrigram(w1, w2, w3));
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }

  for (const std::string &s : g.SortedSurfaces()) {
    EXPECT_TRUE(lm.ValidNGram(s)) << s;
  }

  std::vector<std::string> alphabet = vocab;
  alphabet.push_back("unseen");
  for (int i = 0; i < 3000; ++i) {
    std::vector<std::string> seq;
    for (std::size_t k = 1 + rng() % 5; k > 0; --k) {
      seq.push_back(alphabet[rng() % alphabet.size()]);
    }
    const double p = lm.SequenceProbability(seq);
    EXPECT_NEAR(p, oracle.Probability(seq), 1e-12);
    if (p > 0) {
      for (std::size_t k = 1; k < seq.size(); ++k) {
        EXPECT_GT(lm.SequenceProbability(std::span(seq).first(k)), 0.0);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(RandomGazetteers, LanguageModelProperties,
                         ::testing::Range(0, 10));

}  // namespace
}  // namespace locx
