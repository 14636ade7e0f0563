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

#include "locx/tokenizer.h"

#include <array>

#include "locx/text_util.h"

namespace locx {
namespace {

constexpr std::array<std::string_view, 28> kEmoticons = {
    ":)",  ":-)", ":(",  ":-(", ":d",  ":-d", ":p",  ":-p", ";)", ";-)",
    ":/",  ":-/", ":'(", "<3",  "</3", ":o",  ":-o", ":|",  "^^", "^_^",
    "-_-", "=)",  "=(",  ":*",  ":-*", ";p",  ":')", "o_o"};

bool IsWordByte(char c) {
  return IsAsciiAlnum(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool StartsWithNoCase(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = text[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    if (c != prefix[i]) return false;
  }
  return true;
}

// Matches a dotted abbreviation at text[p, e): at least two single-character
// segments each followed by '.', or one such segment plus a final character
// ("u.s.", "u.s", "a.m."). Returns the end offset or p if there is no match.
std::size_t ScanDottedAbbreviation(std::string_view text, std::size_t p,
                                   std::size_t e) {
  std::size_t q = p;
  int segments = 0;
  while (q + 1 < e && IsWordByte(text[q]) && text[q + 1] == '.' &&
         (q == p || text[q - 1] == '.')) {
    ++segments;
    q += 2;
  }
  if (segments >= 1 && q < e && IsWordByte(text[q]) &&
      (q + 1 >= e || (!IsWordByte(text[q + 1]) && text[q + 1] != '.'))) {
    ++segments;
    ++q;
  }
  if (segments < 2) return p;
  if (q < e && IsWordByte(text[q])) return p;
  return q;
}

std::size_t ScanWord(std::string_view text, std::size_t p, std::size_t e) {
  const std::size_t abbrev_end = ScanDottedAbbreviation(text, p, e);
  if (abbrev_end != p) return abbrev_end;
  std::size_t q = p;
  while (q < e) {
    if (IsWordByte(text[q])) {
      ++q;
      continue;
    }
    const char c = text[q];
    const bool next_word = q + 1 < e && IsWordByte(text[q + 1]);
    if ((c == '\'' || c == '-') && next_word && q > p) {
      ++q;
      continue;
    }
    if (c == '.' && q > p && IsAsciiDigit(text[q - 1]) && q + 1 < e &&
        IsAsciiDigit(text[q + 1])) {
      ++q;
      continue;
    }
    break;
  }
  return q;
}

void TokenizeChunk(std::string_view text, std::size_t b, std::size_t e,
                   std::vector<Token> *out) {
  auto emit = [&](std::size_t s, std::size_t t, TokenKind kind) {
    out->push_back(Token{CaseFold(text.substr(s, t - s)), s, t, kind});
  };
  if (IsEmoticon(CaseFold(text.substr(b, e - b)))) {
    emit(b, e, TokenKind::kEmoticon);
    return;
  }
  std::size_t p = b;
  while (p < e) {
    const char c = text[p];
    if ((c == '#' || c == '@') && p + 1 < e && IsWordByte(text[p + 1])) {
      std::size_t q = p + 1;
      while (q < e && IsWordByte(text[q])) ++q;
      emit(p, q, c == '#' ? TokenKind::kHashtag : TokenKind::kMention);
      p = q;
    } else if (IsWordByte(c)) {
      const std::size_t q = ScanWord(text, p, e);
      emit(p, q, TokenKind::kWord);
      p = q;
    } else {
      std::size_t q = p + 1;
      while (q < e && text[q] == c) ++q;
      emit(p, q, TokenKind::kPunctuation);
      p = q;
    }
  }
}

}  // namespace

bool IsEmoticon(std::string_view chunk) {
  for (std::string_view e : kEmoticons) {
    if (chunk == e) return true;
  }
  return false;
}

CleanedText CleanTweet(std::string_view raw) {
  // First pass: mark every raw byte as kept or as a boundary.
  std::vector<bool> boundary(raw.size(), false);
  std::size_t i = 0;
  while (i < raw.size()) {
    if (IsAsciiSpace(raw[i])) {
      boundary[i] = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < raw.size() && !IsAsciiSpace(raw[j])) ++j;
    const std::string_view chunk = raw.substr(i, j - i);
    if (StartsWithNoCase(chunk, "rt") &&
        (chunk.size() == 2 || (chunk.size() == 3 && chunk[2] == ':'))) {
      for (std::size_t k = i; k < j; ++k) boundary[k] = true;
      i = j;
      continue;
    }
    for (std::size_t k = i; k < j;) {
      const std::string_view rest = raw.substr(k, j - k);
      const bool word_before = k > i && IsWordByte(raw[k - 1]);
      if (!word_before && (StartsWithNoCase(rest, "http://") ||
                           StartsWithNoCase(rest, "https://") ||
                           StartsWithNoCase(rest, "www."))) {
        for (std::size_t m = k; m < j; ++m) boundary[m] = true;
        break;
      }
      if (raw[k] == '@' && !word_before && k + 1 < j &&
          IsWordByte(raw[k + 1]) &&
          static_cast<unsigned char>(raw[k + 1]) < 0x80) {
        std::size_t m = k + 1;
        while (m < j && (IsAsciiAlnum(raw[m]) || raw[m] == '_')) ++m;
        if (m < j && raw[m] == ':') ++m;
        for (std::size_t n = k; n < m; ++n) boundary[n] = true;
        k = m;
        continue;
      }
      if (static_cast<unsigned char>(raw[k]) >= 0x80) boundary[k] = true;
      ++k;
    }
    i = j;
  }

  // Second pass: emit kept bytes, collapsing boundary runs to one space.
  CleanedText out;
  out.text.reserve(raw.size());
  out.raw_offsets.reserve(raw.size());
  std::size_t pending = std::string::npos;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (boundary[k]) {
      if (pending == std::string::npos && !out.text.empty()) pending = k;
      continue;
    }
    if (pending != std::string::npos) {
      out.text.push_back(' ');
      out.raw_offsets.push_back(pending);
      pending = std::string::npos;
    }
    char c = raw[k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    out.text.push_back(c);
    out.raw_offsets.push_back(k);
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !IsAsciiSpace(text[j])) ++j;
    if (j > i) TokenizeChunk(text, i, j, &tokens);
    i = j;
  }
  return tokens;
}

std::vector<Token> TokenizeTweet(std::string_view raw, CleanedText *cleaned) {
  CleanedText local;
  CleanedText &clean = cleaned != nullptr ? *cleaned : local;
  clean = CleanTweet(raw);
  std::vector<Token> tokens = Tokenize(clean.text);
  for (Token &t : tokens) {
    t.start = clean.raw_offsets[t.start];
    t.end = clean.raw_offsets[t.end - 1] + 1;
  }
  return tokens;
}

}  // namespace locx
