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

#include "locx/gazetteer_io.h"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "locx/errors.h"
#include "locx/text_util.h"

namespace locx {
namespace {

using nlohmann::json;

constexpr std::size_t kGeonamesColumns = 19;

std::optional<double> ParseDouble(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

bool KeepByBox(const GazetteerEntry &e, const std::optional<BoundingBox> &bbox) {
  if (!bbox || !e.latitude || !e.longitude) return true;
  return bbox->Contains(*e.latitude, *e.longitude);
}

void CheckName(const GazetteerEntry &e, std::size_t record) {
  if (Trim(e.canonical_name).empty()) {
    throw DataError("gazetteer record has an empty name", record);
  }
  if (e.id.empty()) throw DataError("gazetteer record has no id", record);
}

std::vector<GazetteerEntry> LoadGeonames(
    const std::filesystem::path &path,
    const std::optional<BoundingBox> &bbox) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read gazetteer: " + path.string());
  static const char *kExtraColumns[] = {
      "feature_class", "feature_code", "country_code", "cc2",
      "admin1_code",   "admin2_code",  "admin3_code",  "admin4_code",
      "population",    "elevation",    "dem",          "timezone",
      "modification_date"};
  std::vector<GazetteerEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  for (; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() != kGeonamesColumns) {
      throw DataError("geonames row has " + std::to_string(cols.size()) +
                          " columns, expected 19",
                      line_no);
    }
    GazetteerEntry e;
    e.source = GazetteerSource::kGeonames;
    e.id = std::string(Trim(cols[0]));
    e.canonical_name = std::string(cols[1]);
    CheckName(e, line_no);
    e.latitude = ParseDouble(cols[4]);
    e.longitude = ParseDouble(cols[5]);
    if (!e.latitude || !e.longitude) {
      throw DataError("geonames row has invalid coordinates", line_no);
    }
    if (!cols[2].empty()) e.extra["asciiname"] = std::string(cols[2]);
    if (!cols[3].empty()) e.extra["alternatenames"] = std::string(cols[3]);
    for (std::size_t c = 6; c < kGeonamesColumns; ++c) {
      if (!cols[c].empty()) e.extra[kExtraColumns[c - 6]] = std::string(cols[c]);
    }
    if (KeepByBox(e, bbox)) entries.push_back(std::move(e));
  }
  return entries;
}

std::string IdString(const json &value, std::size_t record) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned()) {
    return std::to_string(value.get<unsigned long long>());
  }
  throw DataError("gazetteer record id must be a string or integer", record);
}

std::optional<double> OptionalCoordinate(const json &record, const char *key,
                                         std::size_t index) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (it->is_number()) return it->get<double>();
  if (it->is_string()) {
    if (auto v = ParseDouble(it->get<std::string>())) return v;
  }
  throw DataError(std::string("invalid '") + key + "' value", index);
}

GazetteerSource ParseSource(const std::string &name, std::size_t record) {
  if (name == "osm") return GazetteerSource::kOsm;
  if (name == "geonames") return GazetteerSource::kGeonames;
  if (name == "dbpedia") return GazetteerSource::kDbpedia;
  if (name == "generic") return GazetteerSource::kGeneric;
  throw DataError("unknown source '" + name + "'", record);
}

std::vector<GazetteerEntry> LoadJson(const std::filesystem::path &path,
                                     GazetteerFormat format,
                                     const std::optional<BoundingBox> &bbox) {
  const std::string text = ReadFile(path);
  if (Trim(text).empty()) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw DataError("gazetteer JSON must be an array: " + path.string());
  }
  std::vector<GazetteerEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json &record = doc[i];
    if (!record.is_object()) throw DataError("record is not an object", i);
    auto id = record.find("id");
    auto name = record.find("name");
    if (id == record.end()) throw DataError("record has no 'id'", i);
    if (name == record.end() || !name->is_string()) {
      throw DataError("record has no string 'name'", i);
    }
    GazetteerEntry e;
    e.id = IdString(*id, i);
    e.canonical_name = name->get<std::string>();
    CheckName(e, i);
    e.latitude = OptionalCoordinate(record, "lat", i);
    e.longitude = OptionalCoordinate(record, "lon", i);
    if (format == GazetteerFormat::kOsmJson) {
      e.source = GazetteerSource::kOsm;
      auto tags = record.find("tags");
      if (tags != record.end() && !tags->is_null()) {
        if (!tags->is_object()) throw DataError("'tags' must be an object", i);
        for (const auto &[k, v] : tags->items()) {
          e.extra[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
      }
    } else {
      e.source = GazetteerSource::kGeneric;
      auto source = record.find("source");
      if (source != record.end()) {
        if (!source->is_string()) throw DataError("'source' must be a string", i);
        e.source = ParseSource(source->get<std::string>(), i);
      }
    }
    if (KeepByBox(e, bbox)) entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

GazetteerFormat ParseGazetteerFormat(std::string_view name) {
  if (name == "geonames_tsv") return GazetteerFormat::kGeonamesTsv;
  if (name == "osm_json") return GazetteerFormat::kOsmJson;
  if (name == "generic_json") return GazetteerFormat::kGenericJson;
  throw ConfigError("unknown gazetteer format '" + std::string(name) + "'");
}

void BoundingBox::Validate() const {
  if (!(south < north) || !(west < east)) {
    throw ConfigError("bounding box must satisfy south < north, west < east");
  }
}

std::vector<GazetteerEntry> LoadGazetteer(
    const std::filesystem::path &path, GazetteerFormat format,
    const std::optional<BoundingBox> &bbox) {
  if (bbox) bbox->Validate();
  std::vector<GazetteerEntry> entries =
      format == GazetteerFormat::kGeonamesTsv ? LoadGeonames(path, bbox)
                                              : LoadJson(path, format, bbox);
  StringMap<std::size_t> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!seen.try_emplace(entries[i].id, i).second) {
      throw DataError("duplicate id '" + entries[i].id + "'", i);
    }
  }
  return entries;
}

}  // namespace locx
