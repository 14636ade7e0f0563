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

#ifndef LOCX_GAZETTEER_H_
#define LOCX_GAZETTEER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "locx/text_util.h"

namespace locx {

enum class GazetteerSource { kOsm, kGeonames, kDbpedia, kGeneric };

std::string_view SourceName(GazetteerSource source);

// One named place as read from a gazetteer file, before any filtering.
struct GazetteerEntry {
  std::string id;
  std::string canonical_name;
  std::optional<double> latitude;
  std::optional<double> longitude;
  GazetteerSource source = GazetteerSource::kGeneric;
  std::map<std::string, std::string> extra;

  bool operator==(const GazetteerEntry &other) const = default;
};

// Lower values take precedence when two derivations produce one surface.
enum class VariantKind {
  kOriginal = 0,
  kBracketAlternative = 1,
  kHyphenSplit = 2,
  kSkipgram = 3,
};

std::string_view VariantKindName(VariantKind kind);

struct NameVariant {
  std::string surface;
  VariantKind kind = VariantKind::kOriginal;
  std::set<std::string> entry_ids;

  bool operator==(const NameVariant &other) const = default;
};

struct SurfaceForm {
  std::string surface;
  VariantKind kind;

  bool operator==(const SurfaceForm &other) const = default;
};

// Case-folds a name, tokenizes it and rejoins the tokens with single spaces.
// Every gazetteer surface is in this form, so surfaces split on ' ' give the
// model tokens.
std::string NormalizeName(std::string_view name);

// Cleans one raw gazetteer name. Bracketed content listed in |phrases| is
// deleted; other bracketed content becomes a bracket alternative; a single
// " - " yields both sides as hyphen splits. The primary surface, if any, comes
// first. Names with unbalanced or nested brackets are returned normalized
// but otherwise unchanged. A name made only of removable content yields
// nothing.
std::vector<SurfaceForm> FilterEntry(std::string_view name,
                                     const WordSet &phrases);

// Skip-gram contractions of a tokenized name. When the name has at least
// three tokens and ends in a category word, returns every subsequence that
// keeps the first and last token (2^(m-2) of them, including the name);
// otherwise just the name. Names with more than kMaxSkipgramInterior interior
// tokens are not expanded.
std::set<std::string> SkipgramVariants(const std::vector<std::string> &tokens,
                                       const WordSet &category_words);

inline constexpr std::size_t kMaxSkipgramInterior = 12;

struct GazetteerBuildStats {
  std::size_t entries = 0;
  std::size_t entries_without_names = 0;
  std::size_t removed_stopnames = 0;
  std::size_t skipped_hyphen_splits = 0;
  std::map<VariantKind, std::size_t> variants_by_kind;
  std::vector<std::string> warnings;
};

// Immutable mapping from normalized name surfaces to the entries they denote.
class Gazetteer {
 public:
  using VariantMap = StringMap<NameVariant>;
  using EntryMap = StringMap<GazetteerEntry>;

  Gazetteer() = default;

  // Filters and augments |entries|. Derived variants whose surface already
  // exists are merged into the existing variant, except hyphen splits that
  // collide with an original name, which are dropped. Surfaces listed in
  // |stopnames| are removed. Throws DataError on duplicate entry ids.
  static Gazetteer Build(const std::vector<GazetteerEntry> &entries,
                         const WordSet &stopnames, const WordSet &phrases,
                         const WordSet &category_words,
                         GazetteerBuildStats *stats = nullptr);

  // Assembles a gazetteer from already-built parts (used by the model cache).
  // Throws DataError if a variant references an unknown entry.
  static Gazetteer FromParts(EntryMap entries, VariantMap variants,
                             WordSet category_words, WordSet stopnames);

  const NameVariant *Find(std::string_view surface) const;
  const GazetteerEntry *FindEntry(std::string_view id) const;

  const VariantMap &variants() const { return variants_; }
  const EntryMap &entries() const { return entries_; }
  const WordSet &category_words() const { return category_words_; }
  const WordSet &stopnames() const { return stopnames_; }

  std::size_t size() const { return variants_.size(); }
  bool empty() const { return variants_.empty(); }

  // Variant surfaces in lexicographic order.
  std::vector<std::string> SortedSurfaces() const;

 private:
  EntryMap entries_;
  VariantMap variants_;
  WordSet category_words_;
  WordSet stopnames_;
};

}  // namespace locx

#endif  // LOCX_GAZETTEER_H_
