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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "locx/bench.h"
#include "locx/evaluation.h"
#include "locx/pipeline.h"
#include "locx/segmenter.h"
#include "test_support.h"

namespace locx {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Collects failure messages for one criterion; keeps the first few.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(failures_) + " failure(s)";
    for (const std::string &m : messages_) s += "; " + m;
    return s;
  }
  std::string note;

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

fs::path GoldenDir() { return testing::TestDataDir() / "golden"; }

std::vector<json> GoldenTweets() {
  std::vector<json> out;
  std::istringstream in(ReadFile(GoldenDir() / "tweets.jsonl"));
  for (std::string line; std::getline(in, line);) {
    if (!Trim(line).empty()) out.push_back(json::parse(line));
  }
  return out;
}

// 1. Three disaster tweets against a mini-gazetteer with distractors.
void GoldenExtraction(Check &c) {
  const auto start = Clock::now();
  const PipelineConfig config = PipelineConfig::Load(GoldenDir() / "config.json");
  const Pipeline pipeline(config, BuildModel(config));

  using Span = std::tuple<std::string, std::size_t, std::size_t, bool>;
  const std::vector<json> tweets = GoldenTweets();
  c.Expect(tweets.size() == 3, "golden corpus must hold three tweets");
  for (const json &t : tweets) {
    const std::string text = t.at("text");
    std::set<Span> expected;
    auto at = [&](const std::string &s) {
      const std::size_t p = text.find(s);
      c.Expect(p != std::string::npos, "fixture lacks '" + s + "'");
      expected.emplace(s, p, p + s.size(), false);
    };
    if (t.at("id") == "golden:1") {
      at("Oxford school");
      at("west mambalam");
    } else if (t.at("id") == "golden:2") {
      at("New Iberia");
      const std::size_t tag = text.find("#PrayForLouisiana");
      expected.emplace("Louisiana", tag, tag + 17, true);
    } else {
      at("Houston");
    }
    std::set<Span> got;
    for (const LocationMention &m : pipeline.extractor().Extract(text)) {
      got.emplace(m.surface, m.byte_start, m.byte_end, m.from_hashtag);
      c.Expect(m.char_start == m.byte_start && m.char_end == m.byte_end,
               "ASCII tweet must have equal byte and char offsets");
    }
    std::string listing;
    for (const auto &[s, b, e, h] : got) {
      listing += " '" + s + "'@" + std::to_string(b) + "-" + std::to_string(e);
    }
    c.Expect(got == expected, t.at("id").get<std::string>() + " got" + listing);
  }
  const double secs = Seconds(start);
  c.Expect(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  c.note = "build+extract " + std::to_string(secs) + " s";
}

// 2. Skip-gram variant count for names ending in a category word.
void SkipgramBound(Check &c) {
  const WordSet categories =
      ReadWordList(testing::AssetDir() / "category_words.txt");
  std::vector<std::string> cats(categories.begin(), categories.end());
  std::sort(cats.begin(), cats.end());
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = 2 + rng() % 5;
    std::vector<std::string> tokens;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      tokens.push_back("n" + std::to_string(k) + "x" + std::to_string(rng() % 1000));
    }
    tokens.push_back(cats[rng() % cats.size()]);
    const std::size_t n = SkipgramVariants(tokens, categories).size();
    c.Expect(n == (std::size_t{1} << (m - 2)),
             Join(tokens, " ") + " gave " + std::to_string(n));
  }
}

// 3. Language model against a brute-force recount.
void LanguageModelOracle(Check &c) {
  const std::vector<std::string> vocab = {"anna", "nagar", "road", "st",
                                          "north", "lake", "view"};
  std::vector<std::string> probe = vocab;
  probe.push_back("unseen");
  std::mt19937_64 rng(3);
  std::size_t compared = 0;
  for (int g = 0; g < 50; ++g) {
    const Gazetteer gaz = testing::GazetteerOf(
        testing::RandomToyNames(rng, vocab, 20, 5), testing::Words({"road", "lake"}));
    const LanguageModel lm = LanguageModel::Compute(gaz);
    const testing::RecountModel oracle(gaz.SortedSurfaces());

    std::vector<std::size_t> idx;
    for (std::size_t n = 1; n <= 5; ++n) {
      idx.assign(n, 0);
      for (;;) {
        std::vector<std::string> w;
        for (std::size_t k : idx) w.push_back(probe[k]);
        const double got = lm.SequenceProbability(w);
        const double want = oracle.Probability(w);
        ++compared;
        c.Expect(std::abs(got - want) <= 1e-12,
                 Join(w, " ") + ": " + std::to_string(got) + " vs " + std::to_string(want));
        std::size_t k = 0;
        while (k < n && ++idx[k] == probe.size()) idx[k++] = 0;
        if (k == n) break;
      }
    }

    for (const std::string &s : gaz.SortedSurfaces()) {
      c.Expect(lm.ValidNGram(s), "variant '" + s + "' not a valid n-gram");
    }
    const auto &v = lm.vocabulary();
    double uni = 0;
    for (TokenId a = 0; a < v.size(); ++a) uni += std::exp(lm.LogUnigram(a));
    c.Expect(std::abs(uni - 1) <= 1e-9, "unigram distribution sums to " + std::to_string(uni));
    for (TokenId a = 0; a < v.size(); ++a) {
      if (lm.bigram_rows()[a].total > 0) {
        double sum = 0;
        for (TokenId b = 0; b < v.size(); ++b) sum += std::exp(lm.LogBigram(a, b));
        c.Expect(std::abs(sum - 1) <= 1e-9, "bigram row '" + v[a] + "' sums to " + std::to_string(sum));
      }
    }
    for (const auto &[key, row] : lm.trigram_rows()) {
      const auto a = static_cast<TokenId>(key >> 32);
      const auto b = static_cast<TokenId>(key & 0xffffffffu);
      double sum = 0;
      for (TokenId d = 0; d < v.size(); ++d) sum += std::exp(lm.LogTrigram(a, b, d));
      c.Expect(std::abs(sum - 1) <= 1e-9, "trigram row '" + v[a] + " " + v[b] + "' sums to " + std::to_string(sum));
    }
  }
  c.note = std::to_string(compared) + " sequences compared";
}

bool Overlaps(const TokenRange &a, const TokenRange &b) {
  return a.begin < b.end && b.begin < a.end;
}

// 4. Candidate search against exhaustive enumeration, and overlap rules.
void ExtractionOracle(Check &c) {
  std::mt19937_64 rng(4);
  std::size_t candidates = 0;
  for (int pair = 0; pair < 200; ++pair) {
    const testing::ToyWorld world(rng);
    const std::string raw = world.RandomTweet(rng);
    const TweetDocument doc = world.preprocessor().Process(raw);

    // Independent fragmenting of the plain tokens.
    std::vector<TokenRange> fragments;
    std::size_t open = 0;
    for (std::size_t i = 0; i <= doc.tokens.size(); ++i) {
      const bool split = i == doc.tokens.size() || doc.tokens[i].kind != TokenKind::kWord ||
                         world.preprocessor().stoplist().Contains(doc.tokens[i].text);
      if (!split) continue;
      if (i > open) fragments.push_back({open, i});
      open = i + 1;
    }
    std::vector<TokenRange> plain;

    for (const FragmentCandidates &fc : world.extractor().Candidates(doc)) {
      if (!fc.from_hashtag) plain.push_back(fc.range);
      std::vector<std::string> originals;
      for (const TokenSynonymVector &v : fc.vectors) originals.push_back(v.original);
      std::set<testing::OracleMatch> got;
      for (const CandidateMatch &m : fc.candidates) got.insert({m.range.begin, m.range.end, m.tokens});
      candidates += got.size();
      c.Expect(got == testing::ExhaustiveCandidates(originals, testing::ToyWorld::kPairs,
                                                    world.gazetteer()),
               "candidate mismatch on '" + raw + "'");

      const std::vector<CandidateMatch> kept = ResolveOverlaps(fc.candidates);
      for (const CandidateMatch &k : kept) {
        c.Expect(std::find(fc.candidates.begin(), fc.candidates.end(), k) != fc.candidates.end(),
                 "resolved output invents a candidate");
        for (const CandidateMatch &o : kept) {
          c.Expect(!Overlaps(k.range, o.range) || k.range.size() == o.range.size(),
                   "kept overlapping candidates of different length on '" + raw + "'");
        }
      }
      for (const CandidateMatch &d : fc.candidates) {
        if (std::find(kept.begin(), kept.end(), d) != kept.end()) continue;
        bool shadowed = false;
        for (const CandidateMatch &k : kept) {
          shadowed |= Overlaps(k.range, d.range) && k.range.size() > d.range.size();
        }
        c.Expect(shadowed, "dropped '" + d.surface + "' without a longer overlap");
      }
    }
    c.Expect(plain == fragments, "fragment boundaries differ on '" + raw + "'");
  }
  c.note = std::to_string(candidates) + " candidates checked";
}

GoldAnnotation Gold(const std::string &doc, std::size_t b, std::size_t e,
                    GoldCategory category = GoldCategory::kInLoc) {
  return GoldAnnotation{doc, "T", b, e, "", category};
}

LocationMention Pred(std::size_t b, std::size_t e) {
  LocationMention m;
  m.char_start = b;
  m.char_end = e;
  return m;
}

bool Near(double a, double b) { return std::abs(a - b) <= 1e-12; }

// 5. Scoring arithmetic.
void ScoringArithmetic(Check &c) {
  const std::vector<PredictedSpan> p = {{5, 15}};
  const std::vector<GoldAnnotation> g = {Gold("x", 0, 10)};
  const ScoreReport half = MatchSpans(p, g, EvalMode::kStandard);
  c.Expect(half.tp == 0 && half.fp == 0.5 && half.fn == 0.5, "partial match is not half FP, half FN");

  // A: two exact hits. B: one partial hit and one stray prediction.
  // C: exact prediction of an ambiguous span, inLoc missed.
  // D: two of three found.
  const std::vector<GoldDocument> gold = {
      {"A", "", {Gold("A", 0, 10), Gold("A", 15, 20)}},
      {"B", "", {Gold("B", 0, 10)}},
      {"C", "", {Gold("C", 0, 8), Gold("C", 20, 27, GoldCategory::kAmbLoc)}},
      {"D", "", {Gold("D", 0, 5), Gold("D", 10, 15), Gold("D", 20, 25)}}};
  const std::vector<std::pair<std::string, std::vector<LocationMention>>> preds = {
      {"A", {Pred(0, 10), Pred(15, 20)}},
      {"B", {Pred(4, 14), Pred(30, 37)}},
      {"C", {Pred(20, 27)}},
      {"D", {Pred(0, 5), Pred(10, 15)}}};
  const EvaluationResult r = Evaluate(preds, gold, EvalMode::kStandard, 0);
  const std::vector<std::tuple<double, double, double>> per = {
      {2, 0, 0}, {0, 1.5, 0.5}, {0, 0, 1}, {2, 0, 1}};
  for (std::size_t i = 0; i < per.size() && i < r.documents.size(); ++i) {
    const ScoreReport &d = r.documents[i].report;
    c.Expect(std::make_tuple(d.tp, d.fp, d.fn) == per[i], "document " + r.documents[i].id);
  }
  const ScoreReport &a = r.aggregate;
  c.Expect(a.tp == 4 && a.fp == 1.5 && a.fn == 2.5, "aggregate counts");
  c.Expect(Near(a.precision, 8.0 / 11) && Near(a.recall, 8.0 / 13) && Near(a.f1, 2.0 / 3),
           "aggregate ratios " + std::to_string(a.precision) + " " +
               std::to_string(a.recall) + " " + std::to_string(a.f1));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    std::vector<GoldAnnotation> gs;
    for (std::size_t k = 0; k < 6; ++k) {
      gs.push_back(Gold("r", k * 10, k * 10 + 3 + rng() % 5,
                        static_cast<GoldCategory>(rng() % 3)));
    }
    std::vector<PredictedSpan> ps;
    for (std::size_t k = 1 + rng() % 8; k > 0; --k) {
      if (rng() % 2) {
        const GoldAnnotation &x = gs[rng() % gs.size()];
        ps.push_back({x.char_start, x.char_end});
      } else {
        const std::size_t b = rng() % 60;
        ps.push_back({b, b + 1 + rng() % 8});
      }
    }
    const double standard = MatchSpans(ps, gs, EvalMode::kStandard).precision;
    const double strict = MatchSpans(ps, gs, EvalMode::kLnexStrict).precision;
    c.Expect(strict <= standard + 1e-12, "strict precision above standard");
  }
}

// 6. Hashtag segmentation with the shipped frequency list.
void HashtagSegmentation(Check &c) {
  const SegmenterDictionary dict =
      SegmenterDictionary::Load(testing::AssetDir() / "english_unigrams.tsv");
  const std::vector<std::string> pray = SegmentHashtag("#PrayForLouisiana", dict);
  const std::vector<std::string> lawx = SegmentHashtag("#lawx", dict);
  c.Expect(pray == std::vector<std::string>{"pray", "for", "louisiana"},
           "#PrayForLouisiana -> " + Join(pray, "|"));
  c.Expect(lawx == std::vector<std::string>{"law", "x"}, "#lawx -> " + Join(lawx, "|"));
  std::mt19937_64 rng(6);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzQWERTY0123456789_";
  for (int i = 0; i < 1000; ++i) {
    std::string body;
    for (std::size_t n = 1 + rng() % 30; n > 0; --n) body += alphabet[rng() % alphabet.size()];
    std::string joined;
    for (const std::string &piece : SegmentHashtag("#" + body, dict)) joined += piece;
    c.Expect(joined == CaseFold(body), "lossy on #" + body);
  }
}

// 7. Single-threaded throughput on the synthetic benchmark.
void Throughput(Check &c) {
  const BenchResult r = RunBench(BenchOptions{}, PipelineConfig::Defaults());
  c.Expect(r.variants >= 50000, "gazetteer has only " + std::to_string(r.variants) + " variants");
  c.Expect(r.tweets == 10000, "stream has " + std::to_string(r.tweets) + " tweets");
  c.Expect(r.tweets_per_second >= 200,
           std::to_string(r.tweets_per_second) + " tweets/s");
  const double mb = static_cast<double>(r.peak_rss_kb) / 1024;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.0f tweets/s, %zu variants, peak RSS %.1f MB (%s 650 MB soft target)",
                r.tweets_per_second, r.variants, mb, mb <= 650 ? "within" : "ABOVE");
  c.note = buf;
}

// 8. Worker count does not change output bytes.
void Determinism(Check &c) {
  const PipelineConfig config = PipelineConfig::Load(GoldenDir() / "config.json");
  const Pipeline pipeline(config, BuildModel(config));
  auto run = [&](const std::string &input, unsigned workers, std::size_t batch) {
    std::istringstream in(input);
    std::ostringstream out;
    ProcessStream(in, out, pipeline.extractor(), workers, batch);
    return out.str();
  };
  const std::string golden = ReadFile(GoldenDir() / "tweets.jsonl");
  const std::string serial = run(golden, 1, 1024);
  c.Expect(!serial.empty(), "no output for the golden corpus");
  c.Expect(run(golden, 4, 1024) == serial, "golden corpus differs with 4 workers");
  c.Expect(run(golden, 4, 1) == serial, "golden corpus differs with 4 workers, batch 1");

  const std::vector<json> tweets = GoldenTweets();
  std::mt19937_64 rng(8);
  std::string big;
  for (int i = 0; i < 3000; ++i) {
    if (i % 101 == 0) {
      big += "{broken\n";
      continue;
    }
    json rec = tweets[rng() % tweets.size()];
    rec["id"] = "g" + std::to_string(i);
    big += rec.dump() + "\n";
  }
  c.Expect(run(big, 4, 64) == run(big, 1, 1024), "generated stream differs with 4 workers");
}

}  // namespace
}  // namespace locx

int main() {
  const std::vector<std::pair<const char *, std::function<void(locx::Check &)>>> criteria = {
      {"golden tweets yield exact mention spans", locx::GoldenExtraction},
      {"skip-gram variant count is 2^(m-2)", locx::SkipgramBound},
      {"language model matches brute-force recount", locx::LanguageModelOracle},
      {"candidates match exhaustive enumeration; overlaps resolved", locx::ExtractionOracle},
      {"scoring arithmetic", locx::ScoringArithmetic},
      {"hashtag segmentation", locx::HashtagSegmentation},
      {"throughput >= 200 tweets/s single-threaded", locx::Throughput},
      {"4 workers byte-identical to 1", locx::Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    locx::Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception &e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::string line = (check.ok() ? "PASS [" : "FAIL [") + std::to_string(i + 1) + "] " +
                       criteria[i].first;
    if (!check.ok()) line += " -- " + check.Summary();
    if (!check.note.empty()) line += " (" + check.note + ")";
    std::puts(line.c_str());
    std::fflush(stdout);
    failed += check.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
