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

#include "locx/segmenter.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "locx/errors.h"

namespace locx {
namespace {

constexpr std::size_t kMaxPieceLength = 24;
constexpr double kTieEpsilon = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<std::string> SegmentPart(std::string_view text,
                                     const SegmenterDictionary &dict) {
  const std::size_t n = text.size();
  if (n == 0) return {};
  const std::size_t max_len =
      std::min(kMaxPieceLength, std::max<std::size_t>(dict.max_word_length(), 1));
  struct Cell {
    double logp = kNegInf;
    std::size_t pieces = 0;
    std::size_t from = 0;
  };
  std::vector<Cell> best(n + 1);
  best[0].logp = 0;
  for (std::size_t end = 1; end <= n; ++end) {
    const std::size_t lo = end > max_len ? end - max_len : 0;
    for (std::size_t begin = lo; begin < end; ++begin) {
      if (best[begin].logp == kNegInf) continue;
      const double logp =
          best[begin].logp + dict.LogProbability(text.substr(begin, end - begin));
      const std::size_t pieces = best[begin].pieces + 1;
      Cell &cell = best[end];
      if (logp > cell.logp + kTieEpsilon ||
          (std::abs(logp - cell.logp) <= kTieEpsilon && pieces < cell.pieces)) {
        cell = Cell{logp, pieces, begin};
      }
    }
  }
  std::vector<std::string> out;
  for (std::size_t end = n; end > 0; end = best[end].from) {
    out.emplace_back(text.substr(best[end].from, end - best[end].from));
  }
  return {out.rbegin(), out.rend()};
}

}  // namespace

SegmenterDictionary SegmenterDictionary::Load(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read frequency list: " + path.string());
  std::vector<std::pair<std::string, std::uint64_t>> ranked;
  std::uint64_t total = 0;
  std::string line;
  std::size_t line_no = 0;
  for (; std::getline(in, line); ++line_no) {
    std::string_view view = Trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const std::vector<std::string> parts = SplitWhitespace(view.substr(1));
      if (parts.size() == 2 && parts[0] == "total") {
        std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(),
                        total);
      }
      continue;
    }
    const std::vector<std::string_view> cols = Split(view, '\t');
    std::uint64_t count = 0;
    if (cols.size() != 2 ||
        std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), count)
                .ec != std::errc() ||
        count == 0) {
      throw DataError("malformed frequency line in " + path.string(), line_no);
    }
    ranked.emplace_back(CaseFold(Trim(cols[0])), count);
  }
  return FromCounts(std::move(ranked), total);
}

SegmenterDictionary SegmenterDictionary::FromCounts(
    std::vector<std::pair<std::string, std::uint64_t>> ranked,
    std::uint64_t total_mass) {
  SegmenterDictionary dict;
  std::uint64_t sum = 0;
  for (auto &[word, count] : ranked) {
    if (word.empty() || count == 0) continue;
    if (!dict.counts_.try_emplace(word, count).second) continue;
    dict.ranked_.emplace_back(word, count);
    dict.max_word_length_ = std::max(dict.max_word_length_, word.size());
    sum += count;
  }
  dict.total_mass_ = static_cast<double>(std::max(total_mass, sum));
  if (dict.total_mass_ <= 0) dict.total_mass_ = 1;
  return dict;
}

void SegmenterDictionary::AddWords(const std::vector<std::string> &words,
                                   std::size_t fallback_rank) {
  std::uint64_t fallback = 1;
  if (!ranked_.empty()) {
    const std::size_t rank =
        std::min(std::max<std::size_t>(fallback_rank, 1), ranked_.size());
    fallback = ranked_[rank - 1].second;
  }
  for (const std::string &w : words) {
    if (w.empty() || counts_.contains(w)) continue;
    counts_.emplace(w, fallback);
    ranked_.emplace_back(w, fallback);
    max_word_length_ = std::max(max_word_length_, w.size());
  }
  std::stable_sort(ranked_.begin(), ranked_.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
}

double SegmenterDictionary::LogProbability(std::string_view word) const {
  auto it = counts_.find(word);
  if (it != counts_.end()) {
    return std::log(static_cast<double>(it->second)) - std::log(total_mass_);
  }
  return std::log(10.0) - std::log(total_mass_) -
         static_cast<double>(word.size()) * std::log(10.0);
}

std::uint64_t SegmenterDictionary::Count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::string> SegmentHashtag(std::string_view tag,
                                        const SegmenterDictionary &dict) {
  if (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
  const std::string body = CaseFold(tag);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t underscore = body.find('_', start);
    const std::size_t end =
        underscore == std::string::npos ? body.size() : underscore;
    for (std::string &piece :
         SegmentPart(std::string_view(body).substr(start, end - start), dict)) {
      out.push_back(std::move(piece));
    }
    if (underscore == std::string::npos) break;
    out.emplace_back("_");
    start = underscore + 1;
  }
  return out;
}

}  // namespace locx
