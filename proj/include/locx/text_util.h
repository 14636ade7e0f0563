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

#ifndef LOCX_TEXT_UTIL_H_
#define LOCX_TEXT_UTIL_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace locx {

// Hash functor enabling string_view lookups in string-keyed containers.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

using WordSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

inline bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }

// Simple (one-to-one) Unicode lowercasing of UTF-8 text. Covers ASCII,
// Latin-1, Latin Extended-A, basic Greek and Cyrillic. Invalid UTF-8 bytes
// are copied through unchanged.
std::string CaseFold(std::string_view text);

std::string_view Trim(std::string_view text);

// Trims and replaces every run of whitespace with a single space.
std::string CollapseWhitespace(std::string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);
std::vector<std::string_view> Split(std::string_view text, char sep);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Number of code points in a UTF-8 string. Invalid bytes count as one each.
std::size_t Utf8Length(std::string_view text);

// Converts between byte offsets and code point offsets of one UTF-8 string.
class Utf8Index {
 public:
  explicit Utf8Index(std::string_view text);

  std::size_t ToChar(std::size_t byte_offset) const;
  // Returns npos if the character offset is past the end.
  std::size_t ToByte(std::size_t char_offset) const;
  std::size_t char_count() const { return char_starts_.size() - 1; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  // Byte offset of every code point plus a final entry for the end.
  std::vector<std::size_t> char_starts_;
};

// Reads a UTF-8 newline-delimited word list. Blank lines and lines starting
// with '#' are skipped; entries are trimmed, case-folded and
// whitespace-collapsed.
WordSet ReadWordList(const std::filesystem::path &path);

// Reads the whole file into a string. Throws DataError if unreadable.
std::string ReadFile(const std::filesystem::path &path);

}  // namespace locx

#endif  // LOCX_TEXT_UTIL_H_
