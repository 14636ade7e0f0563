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

#ifndef LOCX_GAZETTEER_IO_H_
#define LOCX_GAZETTEER_IO_H_

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "locx/gazetteer.h"

namespace locx {

enum class GazetteerFormat { kGeonamesTsv, kOsmJson, kGenericJson };

// Parses "geonames_tsv", "osm_json" or "generic_json". Throws ConfigError.
GazetteerFormat ParseGazetteerFormat(std::string_view name);

struct BoundingBox {
  double south = 0;
  double west = 0;
  double north = 0;
  double east = 0;

  // Throws ConfigError unless south < north and west < east.
  void Validate() const;
  bool Contains(double lat, double lon) const {
    return lat >= south && lat <= north && lon >= west && lon <= east;
  }
};

// Loads raw records from a gazetteer file. Names are kept verbatim. With a
// bounding box, entries that have coordinates outside it are dropped;
// entries without coordinates are kept.
//
// geonames_tsv: the 19-column Geonames dump layout (geonameid, name,
//   asciiname, alternatenames, latitude, longitude, feature class, ...).
// osm_json: a JSON array of {"id", "name", "lat", "lon", "tags"}.
// generic_json: a JSON array of {"id", "name"} with optional "lat", "lon"
//   and "source" ("dbpedia", "osm", "geonames" or "generic").
//
// Throws DataError carrying the record index for malformed records and for
// ids repeated within the file.
std::vector<GazetteerEntry> LoadGazetteer(
    const std::filesystem::path &path, GazetteerFormat format,
    const std::optional<BoundingBox> &bbox = std::nullopt);

}  // namespace locx

#endif  // LOCX_GAZETTEER_IO_H_
