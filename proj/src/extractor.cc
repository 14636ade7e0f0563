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

#include "locx/extractor.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <tuple>

#include "locx/errors.h"

namespace locx {
namespace {

void AddUnique(std::vector<std::string> *list, const std::string &value) {
  if (std::find(list->begin(), list->end(), value) == list->end()) {
    list->push_back(value);
  }
}

struct PathNode {
  std::vector<TokenId> ids;
};

std::string JoinTokens(const LanguageModel &model,
                       const std::vector<TokenId> &ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.append(model.Token(ids[i]));
  }
  return out;
}

bool Overlaps(const TokenRange &a, const TokenRange &b) {
  return a.begin < b.end && b.begin < a.end;
}

}  // namespace

AbbreviationDictionary AbbreviationDictionary::Load(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read abbreviations: " + path.string());
  AbbreviationDictionary dict;
  std::string line;
  std::size_t line_no = 0;
  for (; std::getline(in, line); ++line_no) {
    const std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::vector<std::string_view> cols = Split(view, '\t');
    if (cols.size() != 2 || Trim(cols[0]).empty() || Trim(cols[1]).empty()) {
      throw DataError("malformed abbreviation line in " + path.string(),
                      line_no);
    }
    dict.Add(cols[0], cols[1]);
  }
  return dict;
}

void AbbreviationDictionary::Add(std::string_view abbreviation,
                                 std::string_view expansion) {
  const std::string a = CollapseWhitespace(CaseFold(abbreviation));
  const std::string e = CollapseWhitespace(CaseFold(expansion));
  if (a.empty() || e.empty() || a == e) return;
  auto &fwd = forward_[a];
  if (std::find(fwd.begin(), fwd.end(), e) != fwd.end()) return;
  fwd.push_back(e);
  backward_[e].push_back(a);
  ++pairs_;
}

std::vector<std::string> AbbreviationDictionary::Images(
    std::string_view token) const {
  std::vector<std::string> out;
  for (const auto *map : {&forward_, &backward_}) {
    auto it = map->find(token);
    if (it == map->end()) continue;
    std::vector<std::string> sorted = it->second;
    std::sort(sorted.begin(), sorted.end());
    for (const std::string &s : sorted) AddUnique(&out, s);
  }
  return out;
}

TokenSynonymVector ExpandToken(std::string_view token,
                               const AbbreviationDictionary &suffixes,
                               const AbbreviationDictionary &osm_abbreviations) {
  TokenSynonymVector v;
  v.original = std::string(token);
  v.alternatives.push_back(v.original);
  for (const AbbreviationDictionary *dict : {&suffixes, &osm_abbreviations}) {
    for (const std::string &image : dict->Images(token)) {
      AddUnique(&v.alternatives, image);
    }
  }
  return v;
}

std::vector<CandidateMatch> FindValidNGrams(
    std::span<const TokenSynonymVector> fragment, const LanguageModel &model,
    const Gazetteer &gazetteer, SearchStats *stats) {
  SearchStats local;
  SearchStats &st = stats != nullptr ? *stats : local;

  // Alternatives unknown to the model have zero unigram probability, so they
  // are dropped up front.
  const std::size_t n = fragment.size();
  std::vector<std::vector<TokenId>> known(n);
  std::size_t max_vector = 0;
  for (std::size_t i = 0; i < n; ++i) {
    max_vector = std::max(max_vector, fragment[i].alternatives.size());
    for (const std::string &alt : fragment[i].alternatives) {
      if (const std::optional<TokenId> id = model.Lookup(alt)) {
        known[i].push_back(*id);
      }
    }
  }
  st.max_vector_size = std::max(st.max_vector_size, max_vector);

  std::vector<CandidateMatch> out;
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<PathNode> frontier;
    std::size_t evaluations = fragment[start].alternatives.size();
    std::size_t synonym_tokens = 0;
    for (TokenId id : known[start]) frontier.push_back(PathNode{{id}});

    for (std::size_t end = start + 1;; ++end) {
      // Instrumentation for the |v|^s bound on this span.
      st.nodes_explored += evaluations;
      if (fragment[end - 1].alternatives.size() > 1) ++synonym_tokens;
      st.max_span_evaluations = std::max(st.max_span_evaluations, evaluations);
      const double bound =
          std::pow(static_cast<double>(max_vector),
                   static_cast<double>(synonym_tokens));
      if (static_cast<double>(evaluations) > bound) ++st.bound_violations;

      for (const PathNode &node : frontier) {
        std::string surface = JoinTokens(model, node.ids);
        if (gazetteer.Find(surface) != nullptr) {
          CandidateMatch c;
          c.range = TokenRange{start, end};
          for (TokenId id : node.ids) c.tokens.push_back(model.Token(id));
          c.surface = std::move(surface);
          out.push_back(std::move(c));
        }
      }
      if (end == n || frontier.empty()) break;

      std::vector<PathNode> next;
      evaluations = frontier.size() * fragment[end].alternatives.size();
      for (const PathNode &node : frontier) {
        const std::size_t k = node.ids.size();
        for (TokenId id : known[end]) {
          const double factor =
              k == 1 ? model.LogBigram(node.ids[0], id)
                     : model.LogTrigram(node.ids[k - 2], node.ids[k - 1], id);
          if (factor == kLogZero) continue;
          PathNode extended = node;
          extended.ids.push_back(id);
          next.push_back(std::move(extended));
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
  }
  return out;
}

std::vector<CandidateMatch> ResolveOverlaps(
    std::vector<CandidateMatch> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const CandidateMatch &a, const CandidateMatch &b) {
              if (a.range.size() != b.range.size()) {
                return a.range.size() > b.range.size();
              }
              if (a.range.begin != b.range.begin) {
                return a.range.begin < b.range.begin;
              }
              return a.surface < b.surface;
            });
  std::vector<CandidateMatch> kept;
  for (CandidateMatch &c : candidates) {
    const bool blocked =
        std::any_of(kept.begin(), kept.end(), [&c](const CandidateMatch &k) {
          return Overlaps(k.range, c.range) && k.range.size() != c.range.size();
        });
    if (!blocked) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(),
            [](const CandidateMatch &a, const CandidateMatch &b) {
              if (a.range.begin != b.range.begin) {
                return a.range.begin < b.range.begin;
              }
              return a.surface < b.surface;
            });
  return kept;
}

Extractor::Extractor(const Gazetteer &gazetteer, const LanguageModel &model,
                     const TextPreprocessor &preprocessor,
                     const AbbreviationDictionary &suffixes,
                     const AbbreviationDictionary &osm_abbreviations)
    : gazetteer_(gazetteer),
      model_(model),
      preprocessor_(preprocessor),
      suffixes_(suffixes),
      osm_(osm_abbreviations) {}

std::vector<FragmentCandidates> Extractor::Candidates(const TweetDocument &doc,
                                                      SearchStats *stats) const {
  std::vector<FragmentCandidates> out;
  auto run = [&](const std::vector<Token> &tokens, const TokenRange &range,
                 bool from_hashtag, std::size_t hashtag_token) {
    FragmentCandidates fc;
    fc.from_hashtag = from_hashtag;
    fc.hashtag_token = hashtag_token;
    fc.range = range;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      fc.vectors.push_back(ExpandToken(tokens[i].text, suffixes_, osm_));
    }
    fc.candidates = FindValidNGrams(fc.vectors, model_, gazetteer_, stats);
    out.push_back(std::move(fc));
  };
  for (const TokenRange &range : doc.splits) run(doc.tokens, range, false, 0);
  for (const auto &[index, expansion] : doc.hashtag_expansions) {
    for (const TokenRange &range : expansion.splits) {
      run(expansion.pieces, range, true, index);
    }
  }
  return out;
}

std::vector<LocationMention> Extractor::Extract(std::string_view raw,
                                                ExtractionStats *stats) const {
  return Extract(preprocessor_.Process(raw), stats);
}

std::vector<LocationMention> Extractor::Extract(const TweetDocument &doc,
                                                ExtractionStats *stats) const {
  ExtractionStats local;
  ExtractionStats &st = stats != nullptr ? *stats : local;
  std::vector<FragmentCandidates> fragments = Candidates(doc, &st.search);
  st.fragments += fragments.size();

  std::vector<LocationMention> mentions;
  std::optional<Utf8Index> index;
  for (FragmentCandidates &fc : fragments) {
    st.candidates += fc.candidates.size();
    if (fc.candidates.empty()) continue;
    if (!index) index.emplace(doc.raw);
    const std::vector<Token> &tokens =
        fc.from_hashtag ? doc.hashtag_expansions.at(fc.hashtag_token).pieces
                        : doc.tokens;
    for (const CandidateMatch &c : ResolveOverlaps(std::move(fc.candidates))) {
      const Token &first = tokens[fc.range.begin + c.range.begin];
      const Token &last = tokens[fc.range.begin + c.range.end - 1];
      LocationMention m;
      m.surface = doc.raw.substr(first.start, last.end - first.start);
      m.matched_name = c.surface;
      m.from_hashtag = fc.from_hashtag;
      if (fc.from_hashtag) {
        const Token &tag = doc.tokens[fc.hashtag_token];
        m.byte_start = tag.start;
        m.byte_end = tag.end;
      } else {
        m.byte_start = first.start;
        m.byte_end = last.end;
      }
      m.char_start = index->ToChar(m.byte_start);
      m.char_end = index->ToChar(m.byte_end);
      const NameVariant *variant = gazetteer_.Find(c.surface);
      m.entry_ids.assign(variant->entry_ids.begin(), variant->entry_ids.end());
      mentions.push_back(std::move(m));
    }
  }
  auto key = [](const LocationMention &m) {
    return std::tie(m.char_start, m.matched_name, m.char_end, m.surface);
  };
  std::sort(mentions.begin(), mentions.end(),
            [&key](const LocationMention &a, const LocationMention &b) {
              return key(a) < key(b);
            });
  mentions.erase(std::unique(mentions.begin(), mentions.end()), mentions.end());
  return mentions;
}

}  // namespace locx
