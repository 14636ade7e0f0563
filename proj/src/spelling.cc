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

#include "locx/spelling.h"

#include <algorithm>
#include <unordered_set>

namespace locx {
namespace {

// All strings obtained from |word| by deleting 0..max_deletes characters.
void CollectDeletes(const std::string &word, int max_deletes,
                    std::unordered_set<std::string> *out) {
  out->insert(word);
  std::vector<std::string> frontier{word};
  for (int d = 0; d < max_deletes; ++d) {
    std::vector<std::string> next;
    for (const std::string &w : frontier) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::string shorter = w.substr(0, i) + w.substr(i + 1);
        if (out->insert(shorter).second) next.push_back(std::move(shorter));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

int OsaDistance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

std::uint64_t SpellingCorrector::Key(std::string_view s) {
  // FNV-1a.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

SpellingCorrector::SpellingCorrector(
    std::vector<std::pair<std::string, std::uint64_t>> vocabulary,
    int max_edit_distance)
    : max_edit_distance_(std::max(0, max_edit_distance)) {
  for (auto &[word, freq] : vocabulary) {
    if (word.empty()) continue;
    auto [it, inserted] = frequency_.try_emplace(word, freq);
    if (!inserted) {
      it->second = std::max(it->second, freq);
      continue;
    }
    words_.push_back(word);
  }
  std::unordered_set<std::string> deletes;
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    deletes.clear();
    CollectDeletes(words_[i], max_edit_distance_, &deletes);
    for (const std::string &d : deletes) deletes_.emplace_back(Key(d), i);
  }
  std::sort(deletes_.begin(), deletes_.end());
}

std::string SpellingCorrector::Correct(std::string_view token) const {
  if (token.empty() || InVocabulary(token)) return std::string(token);
  std::unordered_set<std::string> deletes;
  CollectDeletes(std::string(token), max_edit_distance_, &deletes);

  std::unordered_set<std::uint32_t> seen;
  const std::string *best = nullptr;
  int best_distance = max_edit_distance_ + 1;
  std::uint64_t best_freq = 0;
  for (const std::string &d : deletes) {
    const std::uint64_t key = Key(d);
    auto it = std::lower_bound(
        deletes_.begin(), deletes_.end(), key,
        [](const std::pair<std::uint64_t, std::uint32_t> &e, std::uint64_t k) {
          return e.first < k;
        });
    for (; it != deletes_.end() && it->first == key; ++it) {
      const std::uint32_t idx = it->second;
      if (!seen.insert(idx).second) continue;
      const std::string &word = words_[idx];
      const std::size_t len_gap = word.size() > token.size()
                                      ? word.size() - token.size()
                                      : token.size() - word.size();
      if (len_gap > static_cast<std::size_t>(max_edit_distance_)) continue;
      const int distance = OsaDistance(token, word);
      if (distance > max_edit_distance_) continue;
      const std::uint64_t freq = frequency_.find(word)->second;
      if (best == nullptr || distance < best_distance ||
          (distance == best_distance &&
           (freq > best_freq || (freq == best_freq && word < *best)))) {
        best = &word;
        best_distance = distance;
        best_freq = freq;
      }
    }
  }
  return best != nullptr ? *best : std::string(token);
}

}  // namespace locx
