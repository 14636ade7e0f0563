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

#ifndef LOCX_EVALUATION_H_
#define LOCX_EVALUATION_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "locx/extractor.h"

namespace locx {

enum class GoldCategory { kInLoc, kOutLoc, kAmbLoc };

GoldCategory ParseGoldCategory(std::string_view label);
std::string_view GoldCategoryName(GoldCategory category);

struct GoldAnnotation {
  std::string doc_id;
  std::string id;  // BRAT "Tn"
  // Code point offsets into the document text.
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string surface;
  GoldCategory category = GoldCategory::kInLoc;

  bool operator==(const GoldAnnotation &other) const = default;
};

// Parses BRAT standoff T-lines against |text|. Discontinuous spans
// ("0 5;9 14") are reduced to their outer extent; the surface must equal the
// fragments joined by single spaces. Non-T lines are ignored.
std::vector<GoldAnnotation> ParseAnnotations(std::string_view ann,
                                             std::string_view text,
                                             std::string_view doc_id);

// Reads a .ann/.txt pair; the document id is the file stem.
std::vector<GoldAnnotation> LoadAnnotations(const std::filesystem::path &ann,
                                            const std::filesystem::path &txt);

// Widens gold spans that fall inside a hashtag of |text| to the whole
// hashtag, matching how extracted hashtag mentions are reported.
std::vector<GoldAnnotation> NormalizeHashtagSpans(
    std::vector<GoldAnnotation> gold, std::string_view text);

enum class EvalMode { kStandard, kLnexStrict };

EvalMode ParseEvalMode(std::string_view name);
std::string_view EvalModeName(EvalMode mode);

struct ScoreReport {
  double tp = 0;
  double fp = 0;
  double fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  static ScoreReport FromCounts(double tp, double fp, double fn);
};

struct PredictedSpan {
  std::size_t char_start = 0;
  std::size_t char_end = 0;
};

// Scores predictions against the gold spans of one document. Exact matches
// with inLoc spans are true positives; inLoc spans that are only overlapped
// cost half a false positive and half a false negative (plus
// |partial_tp_credit| true positives). Each gold span pairs with at most one
// prediction, greedily: exact pairs first, then by overlap, then leftmost
// prediction.
ScoreReport MatchSpans(std::span<const PredictedSpan> predicted,
                       std::span<const GoldAnnotation> gold, EvalMode mode,
                       double partial_tp_credit = 0);
ScoreReport MatchSpans(std::span<const LocationMention> predicted,
                       std::span<const GoldAnnotation> gold, EvalMode mode,
                       double partial_tp_credit = 0);

// Micro-average: sums raw counts and recomputes the ratios.
ScoreReport Aggregate(std::span<const ScoreReport> reports);

nlohmann::ordered_json ToJson(const ScoreReport &report);

// Aligned plain-text table with one row per (label, report).
std::string FormatTable(
    const std::vector<std::pair<std::string, ScoreReport>> &rows);

}  // namespace locx

#endif  // LOCX_EVALUATION_H_
