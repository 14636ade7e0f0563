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

#include "locx/textprep.h"

#include <algorithm>

namespace locx {
namespace {

bool IsAlphabetic(std::string_view word) {
  return std::all_of(word.begin(), word.end(),
                     [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

StopList StopList::ForRegion(const WordSet &base, const LanguageModel &model) {
  WordSet words;
  for (const std::string &w : base) {
    if (!model.Contains(w)) words.insert(w);
  }
  return StopList(std::move(words));
}

bool IsSplitter(const Token &token, const StopList &stoplist) {
  return token.kind != TokenKind::kWord || stoplist.Contains(token.text);
}

std::vector<TokenRange> SplitOnStopwords(std::span<const Token> tokens,
                                         const StopList &stoplist) {
  std::vector<TokenRange> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    while (i < tokens.size() && IsSplitter(tokens[i], stoplist)) ++i;
    std::size_t j = i;
    while (j < tokens.size() && !IsSplitter(tokens[j], stoplist)) ++j;
    if (j > i) out.push_back(TokenRange{i, j});
    i = j;
  }
  return out;
}

TextPreprocessor::TextPreprocessor(
    StopList stoplist, SegmenterDictionary segmenter,
    std::shared_ptr<const SpellingCorrector> speller)
    : stoplist_(std::move(stoplist)),
      segmenter_(std::move(segmenter)),
      speller_(std::move(speller)) {}

TweetDocument TextPreprocessor::Process(std::string_view raw) const {
  TweetDocument doc;
  doc.raw = std::string(raw);
  doc.tokens = TokenizeTweet(raw, &doc.cleaned);

  if (speller_ != nullptr) {
    for (Token &t : doc.tokens) {
      if (t.kind == TokenKind::kWord && IsAlphabetic(t.text) &&
          !stoplist_.Contains(t.text) && !speller_->InVocabulary(t.text)) {
        t.text = speller_->Correct(t.text);
      }
    }
  }

  doc.splits = SplitOnStopwords(doc.tokens, stoplist_);

  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token &tag = doc.tokens[i];
    if (tag.kind != TokenKind::kHashtag) continue;
    HashtagExpansion expansion;
    std::size_t offset = tag.start + 1;
    for (std::string &piece : SegmentHashtag(tag.text, segmenter_)) {
      const std::size_t len = piece.size();
      const TokenKind kind =
          piece == "_" ? TokenKind::kPunctuation : TokenKind::kWord;
      expansion.pieces.push_back(Token{std::move(piece), offset, offset + len,
                                       kind});
      offset += len;
    }
    expansion.splits = SplitOnStopwords(expansion.pieces, stoplist_);
    doc.hashtag_expansions.emplace(i, std::move(expansion));
  }
  return doc;
}

}  // namespace locx
