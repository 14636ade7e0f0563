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

#ifndef LOCX_SEGMENTER_H_
#define LOCX_SEGMENTER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "locx/text_util.h"

namespace locx {

// Unigram word probabilities for hashtag segmentation.
//
// Known words get count / total_mass. Unknown words get
// 10 / (total_mass * 10^length), which falls strictly with length.
class SegmenterDictionary {
 public:
  SegmenterDictionary() = default;

  // Reads "word<TAB>count" lines, most frequent first. A comment line
  // "# total<TAB>N" sets the normalization constant; otherwise the sum of the
  // counts is used.
  static SegmenterDictionary Load(const std::filesystem::path &path);

  // |ranked| must be ordered by descending count.
  static SegmenterDictionary FromCounts(
      std::vector<std::pair<std::string, std::uint64_t>> ranked,
      std::uint64_t total_mass = 0);

  // Adds each word not already present with the count of the word at
  // |fallback_rank| (1-based; clamped to the list length).
  void AddWords(const std::vector<std::string> &words,
                std::size_t fallback_rank = 10000);

  double LogProbability(std::string_view word) const;
  bool Contains(std::string_view word) const { return counts_.contains(word); }
  std::uint64_t Count(std::string_view word) const;
  double total_mass() const { return total_mass_; }
  std::size_t size() const { return counts_.size(); }
  std::size_t max_word_length() const { return max_word_length_; }

  // Words with counts, most frequent first.
  const std::vector<std::pair<std::string, std::uint64_t>> &ranked() const {
    return ranked_;
  }

 private:
  std::vector<std::pair<std::string, std::uint64_t>> ranked_;
  StringMap<std::uint64_t> counts_;
  double total_mass_ = 1;
  std::size_t max_word_length_ = 1;
};

// Splits a hashtag body into the word sequence with the highest product of
// word probabilities (dynamic programming, ties toward fewer words). The
// leading '#' is dropped and the body lowercased; the pieces concatenate back
// to the body. Underscores are kept as their own pieces.
std::vector<std::string> SegmentHashtag(std::string_view tag,
                                        const SegmenterDictionary &dict);

}  // namespace locx

#endif  // LOCX_SEGMENTER_H_
