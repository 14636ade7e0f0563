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

#ifndef LOCX_SPELLING_H_
#define LOCX_SPELLING_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locx/text_util.h"

namespace locx {

// Optimal string alignment distance (Levenshtein plus adjacent
// transpositions, no substring edited twice).
int OsaDistance(std::string_view a, std::string_view b);

// Symmetric-delete spelling correction. Every vocabulary word is indexed by
// the strings reachable from it by up to max_edit_distance deletions; a query
// generates its own deletions, collects the words sharing one, and keeps
// those within max_edit_distance. The best candidate has the smallest
// distance, then the highest frequency, then sorts first.
class SpellingCorrector {
 public:
  SpellingCorrector(std::vector<std::pair<std::string, std::uint64_t>> vocabulary,
                    int max_edit_distance = 2);

  bool InVocabulary(std::string_view word) const {
    return frequency_.contains(word);
  }

  // Returns |token| unchanged when it is in the vocabulary or has no
  // candidate within the distance bound.
  std::string Correct(std::string_view token) const;

  int max_edit_distance() const { return max_edit_distance_; }

 private:
  static std::uint64_t Key(std::string_view s);

  int max_edit_distance_;
  std::vector<std::string> words_;
  StringMap<std::uint64_t> frequency_;
  // Hash of a deletion string to the words producing it. Hash collisions only
  // add candidates, which the distance check removes.
  // Sorted by hash.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> deletes_;
};

}  // namespace locx

#endif  // LOCX_SPELLING_H_
