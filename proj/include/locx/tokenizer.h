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

#ifndef LOCX_TOKENIZER_H_
#define LOCX_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace locx {

enum class TokenKind { kWord, kHashtag, kMention, kEmoticon, kPunctuation };

// A token with byte offsets [start, end) into the text it was read from.
// Text is case-folded; the span holds the pre-folded characters.
struct Token {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
  TokenKind kind = TokenKind::kWord;

  bool operator==(const Token &other) const = default;
};

// Tweet text after removal of retweet markers, URLs, user mentions and
// non-ASCII characters, case-folded. raw_offsets[i] is the byte offset in the
// raw text of cleaned character i.
struct CleanedText {
  std::string text;
  std::vector<std::size_t> raw_offsets;
};

// Removed regions and non-ASCII code points act as token boundaries: the
// cleaned text never joins characters that were not adjacent in the raw text.
CleanedText CleanTweet(std::string_view raw);

// Whitespace-driven tokenizer. Hashtags, mentions and emoticons are single
// tokens. Periods never split dotted abbreviations ("u.s.") or decimals;
// any other punctuation is detached, runs of one punctuation character
// ("..") forming one token. Apostrophes and hyphens inside words are kept.
std::vector<Token> Tokenize(std::string_view text);

// Tokenizes CleanTweet(raw) and maps the token offsets back to raw.
std::vector<Token> TokenizeTweet(std::string_view raw, CleanedText *cleaned);

bool IsEmoticon(std::string_view chunk);

}  // namespace locx

#endif  // LOCX_TOKENIZER_H_
