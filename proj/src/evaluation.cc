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

#include "locx/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <tuple>

#include "locx/errors.h"
#include "locx/text_util.h"
#include "locx/tokenizer.h"

namespace locx {
namespace {

std::size_t ParseOffset(std::string_view s, const std::string &id) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("annotation " + id + ": bad offset '" + std::string(s) +
                    "'");
  }
  return value;
}

double SafeRatio(double num, double den) { return den > 0 ? num / den : 0.0; }

std::size_t Overlap(const PredictedSpan &p, const GoldAnnotation &g) {
  const std::size_t lo = std::max(p.char_start, g.char_start);
  const std::size_t hi = std::min(p.char_end, g.char_end);
  return hi > lo ? hi - lo : 0;
}

bool Exact(const PredictedSpan &p, const GoldAnnotation &g) {
  return p.char_start == g.char_start && p.char_end == g.char_end;
}

std::string FormatNumber(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

GoldCategory ParseGoldCategory(std::string_view label) {
  if (label == "inLoc") return GoldCategory::kInLoc;
  if (label == "outLoc") return GoldCategory::kOutLoc;
  if (label == "ambLoc") return GoldCategory::kAmbLoc;
  throw DataError("unknown annotation label '" + std::string(label) + "'");
}

std::string_view GoldCategoryName(GoldCategory category) {
  switch (category) {
    case GoldCategory::kInLoc:
      return "inLoc";
    case GoldCategory::kOutLoc:
      return "outLoc";
    case GoldCategory::kAmbLoc:
      return "ambLoc";
  }
  return "?";
}

std::vector<GoldAnnotation> ParseAnnotations(std::string_view ann,
                                             std::string_view text,
                                             std::string_view doc_id) {
  const Utf8Index index(text);
  std::vector<GoldAnnotation> out;
  for (std::string_view line : Split(ann, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() != 'T') continue;
    const std::vector<std::string_view> cols = Split(line, '\t');
    const std::string id(cols[0]);
    if (cols.size() < 2) throw DataError("annotation " + id + ": missing fields");
    const std::string_view surface = cols.size() >= 3 ? cols[2] : "";

    const std::string_view spec = cols[1];
    const std::size_t space = spec.find(' ');
    if (space == std::string_view::npos) {
      throw DataError("annotation " + id + ": missing offsets");
    }
    GoldAnnotation g;
    g.doc_id = std::string(doc_id);
    g.id = id;
    try {
      g.category = ParseGoldCategory(spec.substr(0, space));
    } catch (const DataError &e) {
      throw DataError("annotation " + id + ": " + e.what());
    }

    std::string joined;
    bool first = true;
    for (std::string_view frag : Split(spec.substr(space + 1), ';')) {
      const std::vector<std::string> bounds = SplitWhitespace(frag);
      if (bounds.size() != 2) {
        throw DataError("annotation " + id + ": malformed span");
      }
      const std::size_t s = ParseOffset(bounds[0], id);
      const std::size_t e = ParseOffset(bounds[1], id);
      if (s >= e || e > index.char_count()) {
        throw DataError("annotation " + id + ": span " + bounds[0] + "-" +
                        bounds[1] + " outside document");
      }
      const std::size_t bs = index.ToByte(s);
      if (!first) joined.push_back(' ');
      joined.append(text.substr(bs, index.ToByte(e) - bs));
      g.char_start = first ? s : std::min(g.char_start, s);
      g.char_end = first ? e : std::max(g.char_end, e);
      first = false;
    }
    if (joined != surface) {
      throw DataError("annotation " + id + ": surface '" +
                      std::string(surface) + "' does not match text '" +
                      joined + "'");
    }
    g.surface = std::string(surface);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GoldAnnotation> LoadAnnotations(const std::filesystem::path &ann,
                                            const std::filesystem::path &txt) {
  return ParseAnnotations(ReadFile(ann), ReadFile(txt), ann.stem().string());
}

std::vector<GoldAnnotation> NormalizeHashtagSpans(
    std::vector<GoldAnnotation> gold, std::string_view text) {
  CleanedText cleaned;
  const Utf8Index index(text);
  std::vector<std::pair<std::size_t, std::size_t>> tags;
  for (const Token &t : TokenizeTweet(text, &cleaned)) {
    if (t.kind == TokenKind::kHashtag) {
      tags.emplace_back(index.ToChar(t.start), index.ToChar(t.end));
    }
  }
  for (GoldAnnotation &g : gold) {
    for (const auto &[s, e] : tags) {
      if (g.char_start >= s && g.char_end <= e) {
        g.char_start = s;
        g.char_end = e;
        break;
      }
    }
  }
  return gold;
}

EvalMode ParseEvalMode(std::string_view name) {
  if (name == "standard") return EvalMode::kStandard;
  if (name == "lnex_strict") return EvalMode::kLnexStrict;
  throw ConfigError("unknown eval mode '" + std::string(name) + "'");
}

std::string_view EvalModeName(EvalMode mode) {
  return mode == EvalMode::kStandard ? "standard" : "lnex_strict";
}

ScoreReport ScoreReport::FromCounts(double tp, double fp, double fn) {
  ScoreReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = SafeRatio(tp, tp + fp);
  r.recall = SafeRatio(tp, tp + fn);
  r.f1 = SafeRatio(2 * r.precision * r.recall, r.precision + r.recall);
  return r;
}

ScoreReport MatchSpans(std::span<const PredictedSpan> predicted,
                       std::span<const GoldAnnotation> gold, EvalMode mode,
                       double partial_tp_credit) {
  struct Pair {
    bool exact;
    std::size_t overlap;
    std::size_t pred;
    std::size_t gold;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    for (std::size_t j = 0; j < gold.size(); ++j) {
      if (gold[j].category != GoldCategory::kInLoc) continue;
      const std::size_t overlap = Overlap(predicted[i], gold[j]);
      if (overlap == 0) continue;
      pairs.push_back(Pair{Exact(predicted[i], gold[j]), overlap, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Pair &a, const Pair &b) {
    return std::make_tuple(!a.exact, -static_cast<long long>(a.overlap),
                           predicted[a.pred].char_start, a.pred, a.gold) <
           std::make_tuple(!b.exact, -static_cast<long long>(b.overlap),
                           predicted[b.pred].char_start, b.pred, b.gold);
  });

  std::vector<bool> pred_used(predicted.size()), gold_used(gold.size());
  double tp = 0, fp = 0, fn = 0;
  for (const Pair &p : pairs) {
    if (pred_used[p.pred] || gold_used[p.gold]) continue;
    pred_used[p.pred] = gold_used[p.gold] = true;
    if (p.exact) {
      tp += 1;
    } else {
      tp += partial_tp_credit;
      fp += 0.5;
      fn += 0.5;
    }
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (pred_used[i]) continue;
    const bool other_location = std::any_of(
        gold.begin(), gold.end(), [&](const GoldAnnotation &g) {
          return g.category != GoldCategory::kInLoc && Exact(predicted[i], g);
        });
    if (!other_location || mode == EvalMode::kLnexStrict) fp += 1;
  }
  for (std::size_t j = 0; j < gold.size(); ++j) {
    if (!gold_used[j] && gold[j].category == GoldCategory::kInLoc) fn += 1;
  }
  return ScoreReport::FromCounts(tp, fp, fn);
}

ScoreReport MatchSpans(std::span<const LocationMention> predicted,
                       std::span<const GoldAnnotation> gold, EvalMode mode,
                       double partial_tp_credit) {
  std::vector<PredictedSpan> spans;
  spans.reserve(predicted.size());
  for (const LocationMention &m : predicted) {
    spans.push_back(PredictedSpan{m.char_start, m.char_end});
  }
  return MatchSpans(spans, gold, mode, partial_tp_credit);
}

ScoreReport Aggregate(std::span<const ScoreReport> reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to aggregate");
  double tp = 0, fp = 0, fn = 0;
  for (const ScoreReport &r : reports) {
    tp += r.tp;
    fp += r.fp;
    fn += r.fn;
  }
  return ScoreReport::FromCounts(tp, fp, fn);
}

nlohmann::ordered_json ToJson(const ScoreReport &report) {
  return {{"tp", report.tp},
          {"fp", report.fp},
          {"fn", report.fn},
          {"precision", report.precision},
          {"recall", report.recall},
          {"f1", report.f1}};
}

std::string FormatTable(
    const std::vector<std::pair<std::string, ScoreReport>> &rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"document", "tp", "fp", "fn", "precision", "recall", "f1"});
  for (const auto &[label, r] : rows) {
    cells.push_back({label, FormatNumber(r.tp, 1), FormatNumber(r.fp, 1),
                     FormatNumber(r.fn, 1), FormatNumber(r.precision, 4),
                     FormatNumber(r.recall, 4), FormatNumber(r.f1, 4)});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto &row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], Utf8Length(row[c]));
    }
  }
  std::string out;
  for (const auto &row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - Utf8Length(row[c]), ' ');
      if (c == 0) {
        out += row[c] + pad;
      } else {
        out += "  " + pad + row[c];
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace locx
