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

// Fixtures and independent reference implementations shared by the tests.

#ifndef LOCX_TESTS_TEST_SUPPORT_H_
#define LOCX_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "locx/extractor.h"
#include "locx/gazetteer.h"
#include "locx/language_model.h"
#include "locx/segmenter.h"
#include "locx/textprep.h"
#include "locx/text_util.h"

namespace locx::testing {

inline std::filesystem::path AssetDir() { return LOCX_TEST_ASSET_DIR; }
inline std::filesystem::path TestDataDir() { return LOCX_TEST_DATA_DIR; }

inline WordSet Words(std::initializer_list<const char *> words) {
  WordSet out;
  for (const char *w : words) out.insert(w);
  return out;
}

inline GazetteerEntry Entry(std::string id, std::string name) {
  GazetteerEntry e;
  e.id = std::move(id);
  e.canonical_name = std::move(name);
  return e;
}

// A gazetteer over plain names with no filtering dictionaries.
inline Gazetteer GazetteerOf(const std::vector<std::string> &names,
                             const WordSet &categories = {}) {
  std::vector<GazetteerEntry> entries;
  for (std::size_t i = 0; i < names.size(); ++i) {
    entries.push_back(Entry("e" + std::to_string(i), names[i]));
  }
  return Gazetteer::Build(entries, {}, {}, categories);
}

// Up to |max_names| names of 1..|max_len| tokens drawn from a small
// vocabulary, so that n-grams recur across names.
inline std::vector<std::string> RandomToyNames(std::mt19937_64 &rng,
                                               const std::vector<std::string> &vocab,
                                               std::size_t max_names,
                                               std::size_t max_len) {
  std::vector<std::string> names;
  const std::size_t n = 1 + rng() % max_names;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = 1 + rng() % max_len;
    std::string name;
    for (std::size_t k = 0; k < len; ++k) {
      if (k > 0) name += ' ';
      name += vocab[rng() % vocab.size()];
    }
    names.push_back(name);
  }
  return names;
}

// Plain-count maximum likelihood model over a set of surfaces, computed
// without logs or interning.
class RecountModel {
 public:
  explicit RecountModel(const std::vector<std::string> &surfaces) {
    for (const std::string &s : surfaces) {
      const std::vector<std::string> t = SplitWhitespace(s);
      for (std::size_t i = 0; i < t.size(); ++i) {
        ++uni_[t[i]];
        ++total_;
        if (i + 1 < t.size()) {
          ++bi_[{t[i], t[i + 1]}];
          ++bi_row_[t[i]];
        }
        if (i + 2 < t.size()) {
          ++tri_[{t[i], t[i + 1], t[i + 2]}];
          ++tri_row_[{t[i], t[i + 1]}];
        }
      }
    }
  }

  double Probability(const std::vector<std::string> &w) const {
    if (w.empty() || total_ == 0) return 0;
    double p = Ratio(Get(uni_, w[0]), total_);
    if (w.size() >= 2) {
      p *= Ratio(Get(bi_, std::make_pair(w[0], w[1])), Get(bi_row_, w[0]));
    }
    for (std::size_t i = 2; i < w.size(); ++i) {
      p *= Ratio(Get(tri_, std::vector<std::string>{w[i - 2], w[i - 1], w[i]}),
                 Get(tri_row_, std::make_pair(w[i - 2], w[i - 1])));
    }
    return p;
  }

  const std::map<std::string, double> &unigrams() const { return uni_; }

 private:
  template <typename M, typename K>
  static double Get(const M &m, const K &k) {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
  }
  static double Ratio(double a, double b) { return b == 0 ? 0 : a / b; }

  double total_ = 0;
  std::map<std::string, double> uni_;
  std::map<std::pair<std::string, std::string>, double> bi_;
  std::map<std::string, double> bi_row_;
  std::map<std::vector<std::string>, double> tri_;
  std::map<std::pair<std::string, std::string>, double> tri_row_;
};


// Alternatives of |token| straight from abbreviation pairs, both directions.
inline std::set<std::string> OracleAlternatives(
    const std::string &token,
    const std::vector<std::pair<std::string, std::string>> &pairs) {
  std::set<std::string> out = {token};
  for (const auto &[abbr, full] : pairs) {
    if (abbr == token) out.insert(full);
    if (full == token) out.insert(abbr);
  }
  return out;
}

struct OracleMatch {
  std::size_t begin;
  std::size_t end;
  std::vector<std::string> tokens;
  auto operator<=>(const OracleMatch &) const = default;
};

// Every token span x every choice of alternatives, kept when the joined
// surface is a gazetteer variant.
inline std::set<OracleMatch> ExhaustiveCandidates(
    const std::vector<std::string> &fragment,
    const std::vector<std::pair<std::string, std::string>> &pairs,
    const Gazetteer &gazetteer) {
  std::vector<std::vector<std::string>> alts;
  for (const std::string &t : fragment) {
    const std::set<std::string> a = OracleAlternatives(t, pairs);
    alts.emplace_back(a.begin(), a.end());
  }
  std::set<OracleMatch> out;
  for (std::size_t b = 0; b < fragment.size(); ++b) {
    for (std::size_t e = b + 1; e <= fragment.size(); ++e) {
      std::vector<std::size_t> pick(e - b, 0);
      for (;;) {
        std::vector<std::string> tokens;
        for (std::size_t k = 0; k < pick.size(); ++k) tokens.push_back(alts[b + k][pick[k]]);
        if (gazetteer.Find(Join(tokens, " ")) != nullptr) {
          out.insert(OracleMatch{b, e, tokens});
        }
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == alts[b + k].size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
  }
  return out;
}

// A small random region: gazetteer, abbreviations, and a tweet generator
// over a shared vocabulary, so names, abbreviations and stop words collide.
class ToyWorld {
 public:
  inline static const std::vector<std::pair<std::string, std::string>> kPairs = {
      {"rd", "road"}, {"st", "street"}, {"st", "saint"}, {"n", "north"},
      {"mt", "mount"}};

  explicit ToyWorld(std::mt19937_64 &rng)
      : gazetteer_(MakeGazetteer(rng)),
        model_(LanguageModel::Compute(gazetteer_)),
        preprocessor_(MakePreprocessor(model_)),
        abbreviations_(MakeDictionary()),
        extractor_(gazetteer_, model_, preprocessor_, abbreviations_, empty_) {}
  ToyWorld(const ToyWorld &) = delete;

  std::string RandomTweet(std::mt19937_64 &rng) const {
    static const std::vector<std::string> extra = {
        "in", "at", "the", "is", ",", ".", "flood", "near", "#floods", "@user"};
    std::string text;
    for (std::size_t n = 1 + rng() % 15; n > 0; --n) {
      const unsigned roll = static_cast<unsigned>(rng() % 10);
      if (roll < 6) {
        std::string w = Vocab()[rng() % Vocab().size()];
        if (rng() % 4 == 0 && !w.empty()) w[0] = static_cast<char>(w[0] - 32);
        text += w;
      } else if (roll < 9) {
        text += extra[rng() % extra.size()];
      } else {
        text += "#" + Vocab()[rng() % Vocab().size()] + Vocab()[rng() % Vocab().size()];
      }
      text += ' ';
    }
    return text;
  }

  const Gazetteer &gazetteer() const { return gazetteer_; }
  const LanguageModel &model() const { return model_; }
  const Extractor &extractor() const { return extractor_; }
  const TextPreprocessor &preprocessor() const { return preprocessor_; }

 private:
  static const std::vector<std::string> &Vocab() {
    static const std::vector<std::string> v = {
        "anna", "nagar", "adyar", "road", "rd", "street", "st", "saint",
        "thomas", "mount", "mt", "north", "n", "lake", "view"};
    return v;
  }

  static Gazetteer MakeGazetteer(std::mt19937_64 &rng) {
    return GazetteerOf(RandomToyNames(rng, Vocab(), 20, 4), Words({"road", "street", "lake"}));
  }

  static TextPreprocessor MakePreprocessor(const LanguageModel &model) {
    std::vector<std::pair<std::string, std::uint64_t>> counts;
    for (const std::string &w : Vocab()) counts.emplace_back(w, 100);
    counts.emplace_back("floods", 50);
    return TextPreprocessor(
        StopList::ForRegion(Words({"in", "at", "the", "is", "near"}), model),
        SegmenterDictionary::FromCounts(std::move(counts)));
  }

  static AbbreviationDictionary MakeDictionary() {
    AbbreviationDictionary d;
    for (const auto &[a, e] : kPairs) d.Add(a, e);
    return d;
  }

  Gazetteer gazetteer_;
  LanguageModel model_;
  TextPreprocessor preprocessor_;
  AbbreviationDictionary abbreviations_;
  AbbreviationDictionary empty_;
  Extractor extractor_;
};

}  // namespace locx::testing

#endif  // LOCX_TESTS_TEST_SUPPORT_H_
