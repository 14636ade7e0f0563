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

#include "locx/model_cache.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "locx/errors.h"

namespace locx {
namespace {

constexpr char kMagic[8] = {'L', 'O', 'C', 'X', 'M', 'O', 'D', 'L'};

static_assert(std::endian::native == std::endian::little,
              "cache encoding assumes a little-endian host");

class Writer {
 public:
  void U8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) { Raw(&v, sizeof v); }
  void U64(std::uint64_t v) { Raw(&v, sizeof v); }
  void F64(double v) { Raw(&v, sizeof v); }
  void Str(std::string_view s) {
    U64(s.size());
    out_.append(s);
  }
  void Raw(const void *p, std::size_t n) {
    out_.append(static_cast<const char *>(p), n);
  }
  std::string &bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t U32() { return Fixed<std::uint32_t>(); }
  std::uint64_t U64() { return Fixed<std::uint64_t>(); }
  double F64() { return Fixed<double>(); }
  std::string Str() {
    const std::uint64_t n = U64();
    Need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  // Element counts are checked against the remaining bytes so a corrupt
  // length cannot trigger a huge allocation.
  std::uint64_t Count(std::size_t min_element_size) {
    const std::uint64_t n = U64();
    if (n > (in_.size() - pos_) / std::max<std::size_t>(min_element_size, 1)) {
      throw DataError("model cache truncated");
    }
    return n;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  template <typename T>
  T Fixed() {
    Need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof v);
    pos_ += sizeof v;
    return v;
  }
  void Need(std::uint64_t n) const {
    if (n > in_.size() - pos_) throw DataError("model cache truncated");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void WriteWordSet(Writer &w, const WordSet &set) {
  std::vector<std::string> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  w.U64(sorted.size());
  for (const std::string &s : sorted) w.Str(s);
}

WordSet ReadWordSet(Reader &r) {
  WordSet set;
  for (std::uint64_t n = r.Count(8); n > 0; --n) set.insert(r.Str());
  return set;
}

void WriteRow(Writer &w, const SuccessorRow &row) {
  w.U64(row.counts.size());
  for (const auto &[id, count] : row.counts) {
    w.U32(id);
    w.U64(count);
  }
}

SuccessorRow ReadRow(Reader &r) {
  SuccessorRow row;
  for (std::uint64_t n = r.Count(12); n > 0; --n) {
    const TokenId id = r.U32();
    const std::uint64_t count = r.U64();
    row.counts.emplace_back(id, count);
    row.total += count;
  }
  return row;
}

void WriteOptional(Writer &w, const std::optional<double> &v) {
  w.U8(v.has_value() ? 1 : 0);
  if (v) w.F64(*v);
}

std::optional<double> ReadOptional(Reader &r) {
  if (r.U8() == 0) return std::nullopt;
  return r.F64();
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string SerializeModel(const CompiledModel &compiled) {
  const Gazetteer &gaz = compiled.gazetteer;
  const LanguageModel &lm = compiled.model;
  Writer w;
  w.Raw(kMagic, sizeof kMagic);
  w.U32(kModelCacheVersion);

  std::vector<const GazetteerEntry *> entries;
  for (const auto &[id, e] : gaz.entries()) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(),
            [](const auto *a, const auto *b) { return a->id < b->id; });
  w.U64(entries.size());
  for (const GazetteerEntry *e : entries) {
    w.Str(e->id);
    w.Str(e->canonical_name);
    WriteOptional(w, e->latitude);
    WriteOptional(w, e->longitude);
    w.U8(static_cast<std::uint8_t>(e->source));
    w.U64(e->extra.size());
    for (const auto &[k, v] : e->extra) {
      w.Str(k);
      w.Str(v);
    }
  }

  const std::vector<std::string> surfaces = gaz.SortedSurfaces();
  w.U64(surfaces.size());
  for (const std::string &s : surfaces) {
    const NameVariant &v = *gaz.Find(s);
    w.Str(v.surface);
    w.U8(static_cast<std::uint8_t>(v.kind));
    w.U64(v.entry_ids.size());
    for (const std::string &id : v.entry_ids) w.Str(id);
  }
  WriteWordSet(w, gaz.category_words());
  WriteWordSet(w, gaz.stopnames());

  w.U64(lm.vocabulary().size());
  for (std::size_t i = 0; i < lm.vocabulary().size(); ++i) {
    w.Str(lm.vocabulary()[i]);
    w.U64(lm.unigram_counts()[i]);
  }
  w.U64(lm.bigram_rows().size());
  for (const SuccessorRow &row : lm.bigram_rows()) WriteRow(w, row);

  std::vector<std::uint64_t> keys;
  keys.reserve(lm.trigram_rows().size());
  for (const auto &[key, row] : lm.trigram_rows()) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  w.U64(keys.size());
  for (std::uint64_t key : keys) {
    w.U64(key);
    WriteRow(w, lm.trigram_rows().at(key));
  }

  w.U64(Fnv1a64(w.bytes()));
  return std::move(w.bytes());
}

CompiledModel DeserializeModel(std::string_view bytes) {
  if (bytes.size() < sizeof kMagic + 4 + 8 ||
      std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw DataError("not a model cache");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + body.size(), sizeof stored);
  if (stored != Fnv1a64(body)) throw DataError("model cache checksum mismatch");

  Reader r(body.substr(sizeof kMagic));
  const std::uint32_t version = r.U32();
  if (version != kModelCacheVersion) {
    throw DataError("unsupported model cache version " +
                    std::to_string(version));
  }

  Gazetteer::EntryMap entries;
  for (std::uint64_t n = r.Count(8); n > 0; --n) {
    GazetteerEntry e;
    e.id = r.Str();
    e.canonical_name = r.Str();
    e.latitude = ReadOptional(r);
    e.longitude = ReadOptional(r);
    const std::uint8_t source = r.U8();
    if (source > static_cast<std::uint8_t>(GazetteerSource::kGeneric)) {
      throw DataError("model cache: bad entry source");
    }
    e.source = static_cast<GazetteerSource>(source);
    for (std::uint64_t k = r.Count(16); k > 0; --k) {
      std::string key = r.Str();
      e.extra.emplace(std::move(key), r.Str());
    }
    std::string id = e.id;
    entries.emplace(std::move(id), std::move(e));
  }

  Gazetteer::VariantMap variants;
  for (std::uint64_t n = r.Count(8); n > 0; --n) {
    NameVariant v;
    v.surface = r.Str();
    const std::uint8_t kind = r.U8();
    if (kind > static_cast<std::uint8_t>(VariantKind::kSkipgram)) {
      throw DataError("model cache: bad variant kind");
    }
    v.kind = static_cast<VariantKind>(kind);
    for (std::uint64_t k = r.Count(8); k > 0; --k) v.entry_ids.insert(r.Str());
    std::string surface = v.surface;
    variants.emplace(std::move(surface), std::move(v));
  }
  WordSet categories = ReadWordSet(r);
  WordSet stopnames = ReadWordSet(r);

  std::vector<std::string> vocabulary;
  std::vector<std::uint64_t> unigrams;
  for (std::uint64_t n = r.Count(16); n > 0; --n) {
    vocabulary.push_back(r.Str());
    unigrams.push_back(r.U64());
  }
  std::vector<SuccessorRow> bigrams;
  for (std::uint64_t n = r.Count(8); n > 0; --n) bigrams.push_back(ReadRow(r));
  std::unordered_map<std::uint64_t, SuccessorRow> trigrams;
  for (std::uint64_t n = r.Count(16); n > 0; --n) {
    const std::uint64_t key = r.U64();
    trigrams.emplace(key, ReadRow(r));
  }
  if (!r.done()) throw DataError("model cache has trailing bytes");

  CompiledModel out;
  out.gazetteer = Gazetteer::FromParts(std::move(entries), std::move(variants),
                                       std::move(categories),
                                       std::move(stopnames));
  out.model = LanguageModel::FromTables(std::move(vocabulary),
                                        std::move(unigrams), std::move(bigrams),
                                        std::move(trigrams));
  return out;
}

void SaveModelCache(const std::filesystem::path &path,
                    const CompiledModel &compiled) {
  const std::string bytes = SerializeModel(compiled);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write model cache: " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("cannot write model cache: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CompiledModel LoadModelCache(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) {
    throw DataError("model cache not found: " + path.string());
  }
  return DeserializeModel(ReadFile(path));
}

}  // namespace locx
