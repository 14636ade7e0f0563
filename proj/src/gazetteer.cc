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

#include "locx/gazetteer.h"

#include <algorithm>

#include "locx/errors.h"
#include "locx/tokenizer.h"

namespace locx {
namespace {

struct BracketSplit {
  std::string outside;
  std::vector<std::string> inside;
};

// Splits |text| into the part outside parentheses and the bracketed
// contents. Returns nullopt for unbalanced or nested brackets.
std::optional<BracketSplit> SplitBrackets(std::string_view text) {
  BracketSplit split;
  std::size_t open = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      if (open != std::string_view::npos) return std::nullopt;
      open = i;
    } else if (c == ')') {
      if (open == std::string_view::npos) return std::nullopt;
      split.inside.emplace_back(text.substr(open + 1, i - open - 1));
      split.outside.push_back(' ');
      open = std::string_view::npos;
    } else if (open == std::string_view::npos) {
      split.outside.push_back(c);
    }
  }
  if (open != std::string_view::npos) return std::nullopt;
  return split;
}

bool IsRemovablePhrase(const std::string &content, const WordSet &phrases) {
  const std::string key = CollapseWhitespace(content);
  return phrases.contains(key) || phrases.contains("(" + key + ")");
}

void AddForm(std::vector<SurfaceForm> *forms, std::string surface,
             VariantKind kind) {
  if (surface.empty()) return;
  for (const SurfaceForm &f : *forms) {
    if (f.surface == surface) return;
  }
  forms->push_back(SurfaceForm{std::move(surface), kind});
}

void MergeVariant(Gazetteer::VariantMap *variants, const std::string &surface,
                  VariantKind kind, const std::set<std::string> &ids) {
  auto [it, inserted] =
      variants->try_emplace(surface, NameVariant{surface, kind, ids});
  if (inserted) return;
  NameVariant &v = it->second;
  v.entry_ids.insert(ids.begin(), ids.end());
  if (kind < v.kind) v.kind = kind;
}

}  // namespace

std::string_view SourceName(GazetteerSource source) {
  switch (source) {
    case GazetteerSource::kOsm:
      return "osm";
    case GazetteerSource::kGeonames:
      return "geonames";
    case GazetteerSource::kDbpedia:
      return "dbpedia";
    case GazetteerSource::kGeneric:
      return "generic";
  }
  return "generic";
}

std::string_view VariantKindName(VariantKind kind) {
  switch (kind) {
    case VariantKind::kOriginal:
      return "original";
    case VariantKind::kBracketAlternative:
      return "bracket_alternative";
    case VariantKind::kHyphenSplit:
      return "hyphen_split";
    case VariantKind::kSkipgram:
      return "skipgram";
  }
  return "original";
}

std::string NormalizeName(std::string_view name) {
  std::vector<std::string> parts;
  for (Token &t : Tokenize(CaseFold(name))) parts.push_back(std::move(t.text));
  return Join(parts, " ");
}

std::vector<SurfaceForm> FilterEntry(std::string_view name,
                                     const WordSet &phrases) {
  const std::string folded = CollapseWhitespace(CaseFold(name));
  std::vector<SurfaceForm> forms;
  const std::optional<BracketSplit> split = SplitBrackets(folded);
  if (!split) {
    AddForm(&forms, NormalizeName(folded), VariantKind::kOriginal);
    return forms;
  }

  const std::string primary = NormalizeName(split->outside);
  AddForm(&forms, primary, VariantKind::kOriginal);
  for (const std::string &content : split->inside) {
    if (IsRemovablePhrase(content, phrases)) continue;
    AddForm(&forms, NormalizeName(content), VariantKind::kBracketAlternative);
  }

  // Only a lone spaced hyphen marks a partonomy; "winston-salem" stays whole.
  const std::size_t hyphen = primary.find(" - ");
  if (hyphen != std::string::npos &&
      primary.find(" - ", hyphen + 1) == std::string::npos) {
    AddForm(&forms, std::string(Trim(primary.substr(0, hyphen))),
            VariantKind::kHyphenSplit);
    AddForm(&forms, std::string(Trim(primary.substr(hyphen + 3))),
            VariantKind::kHyphenSplit);
  }
  return forms;
}

std::set<std::string> SkipgramVariants(const std::vector<std::string> &tokens,
                                       const WordSet &category_words) {
  std::set<std::string> out;
  if (tokens.empty()) return out;
  const std::size_t m = tokens.size();
  if (m <= 2 || !category_words.contains(tokens.back()) ||
      m - 2 > kMaxSkipgramInterior) {
    out.insert(Join(tokens, " "));
    return out;
  }
  const std::size_t interior = m - 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
    std::string surface = tokens.front();
    for (std::size_t k = 0; k < interior; ++k) {
      if (mask & (std::uint64_t{1} << k)) {
        surface.push_back(' ');
        surface.append(tokens[k + 1]);
      }
    }
    surface.push_back(' ');
    surface.append(tokens.back());
    out.insert(std::move(surface));
  }
  return out;
}

Gazetteer Gazetteer::Build(const std::vector<GazetteerEntry> &entries,
                           const WordSet &stopnames, const WordSet &phrases,
                           const WordSet &category_words,
                           GazetteerBuildStats *stats) {
  GazetteerBuildStats local;
  GazetteerBuildStats &st = stats != nullptr ? *stats : local;
  st = GazetteerBuildStats{};

  Gazetteer gaz;
  for (const std::string &w : category_words) {
    gaz.category_words_.insert(NormalizeName(w));
  }
  for (const std::string &w : stopnames) {
    const std::string n = NormalizeName(w);
    if (!n.empty()) gaz.stopnames_.insert(n);
  }

  struct Derived {
    std::string surface;
    VariantKind kind;
    std::string id;
  };
  std::vector<Derived> derived;

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const GazetteerEntry &entry = entries[i];
    if (!gaz.entries_.try_emplace(entry.id, entry).second) {
      throw DataError("duplicate gazetteer entry id '" + entry.id + "'", i);
    }
    const std::vector<SurfaceForm> forms = FilterEntry(entry.canonical_name,
                                                       phrases);
    if (forms.empty()) ++st.entries_without_names;
    for (const SurfaceForm &form : forms) {
      if (form.kind == VariantKind::kOriginal) {
        MergeVariant(&gaz.variants_, form.surface, form.kind, {entry.id});
      } else {
        derived.push_back({form.surface, form.kind, entry.id});
      }
      for (const std::string &s : SkipgramVariants(
               SplitWhitespace(form.surface), gaz.category_words_)) {
        if (s != form.surface) {
          derived.push_back({s, VariantKind::kSkipgram, entry.id});
        }
      }
    }
  }
  st.entries = entries.size();

  // Originals are all in place, so collision checks below do not depend on
  // entry order.
  StringMap<bool> originals;
  for (const auto &[surface, v] : gaz.variants_) originals[surface] = true;
  for (const Derived &d : derived) {
    if (d.kind == VariantKind::kHyphenSplit && originals.contains(d.surface)) {
      ++st.skipped_hyphen_splits;
      continue;
    }
    MergeVariant(&gaz.variants_, d.surface, d.kind, {d.id});
  }

  for (const std::string &stop : gaz.stopnames_) {
    st.removed_stopnames += gaz.variants_.erase(stop);
  }
  for (const auto &[surface, v] : gaz.variants_) ++st.variants_by_kind[v.kind];
  if (gaz.variants_.empty()) {
    st.warnings.push_back(
        "gazetteer has no variants; extraction will find nothing");
  }
  return gaz;
}

Gazetteer Gazetteer::FromParts(EntryMap entries, VariantMap variants,
                               WordSet category_words, WordSet stopnames) {
  for (const auto &[surface, v] : variants) {
    if (surface.empty() || v.entry_ids.empty()) {
      throw DataError("variant '" + surface + "' is empty or unlinked");
    }
    for (const std::string &id : v.entry_ids) {
      if (!entries.contains(id)) {
        throw DataError("variant '" + surface + "' links unknown entry '" +
                        id + "'");
      }
    }
  }
  Gazetteer gaz;
  gaz.entries_ = std::move(entries);
  gaz.variants_ = std::move(variants);
  gaz.category_words_ = std::move(category_words);
  gaz.stopnames_ = std::move(stopnames);
  return gaz;
}

const NameVariant *Gazetteer::Find(std::string_view surface) const {
  auto it = variants_.find(surface);
  return it == variants_.end() ? nullptr : &it->second;
}

const GazetteerEntry *Gazetteer::FindEntry(std::string_view id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> Gazetteer::SortedSurfaces() const {
  std::vector<std::string> out;
  out.reserve(variants_.size());
  for (const auto &[surface, v] : variants_) out.push_back(surface);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace locx
