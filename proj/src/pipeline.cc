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

#include "locx/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "locx/errors.h"
#include "locx/text_util.h"

namespace locx {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr auto kReplace = json::error_handler_t::replace;

fs::path Resolve(const fs::path &base, const fs::path &p) {
  return p.is_absolute() ? p : base / p;
}

AssetPaths DefaultAssets(const fs::path &dir) {
  return AssetPaths{dir / "stopwords.txt",       dir / "english_unigrams.tsv",
                    dir / "category_words.txt",  dir / "bracket_phrases.txt",
                    dir / "stopnames.txt",       dir / "street_suffixes.tsv",
                    dir / "osm_abbreviations.tsv"};
}

template <typename T>
T Get(const json &obj, const char *key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

void RequireFile(const fs::path &p, std::string_view what) {
  if (!fs::is_regular_file(p)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
}

TextPreprocessor MakePreprocessor(const PipelineConfig &config,
                                  const CompiledModel &compiled) {
  StopList stoplist = StopList::ForRegion(
      ReadWordList(config.assets.stopwords), compiled.model);

  // Gazetteer words join the segmentation dictionary so that hashtags made
  // of rare local names still split on name boundaries.
  SegmenterDictionary dict =
      SegmenterDictionary::Load(config.assets.english_unigrams);
  std::vector<std::string> local;
  for (const std::string &w : compiled.model.vocabulary()) {
    if (w.size() > 1 && std::all_of(w.begin(), w.end(), [](char c) {
          return IsAsciiAlnum(c);
        })) {
      local.push_back(w);
    }
  }
  dict.AddWords(local);

  std::shared_ptr<const SpellingCorrector> speller;
  if (config.spelling_correction) {
    speller = std::make_shared<const SpellingCorrector>(
        dict.ranked(), config.max_edit_distance);
  }
  return TextPreprocessor(std::move(stoplist), std::move(dict),
                          std::move(speller));
}

std::string ErrorRecord(const json &id, std::size_t line_no,
                        const std::string &message) {
  nlohmann::ordered_json rec;
  rec["id"] = id;
  rec["line"] = line_no;
  rec["error"] = message;
  return rec.dump(-1, ' ', false, kReplace);
}

std::string IdString(const json &id) {
  return id.is_string() ? id.get<std::string>() : id.dump();
}

}  // namespace

fs::path DefaultAssetDir() {
  if (const char *env = std::getenv("LOCX_ASSET_DIR");
      env != nullptr && *env != '\0') {
    return env;
  }
  return LOCX_DEFAULT_ASSET_DIR;
}

PipelineConfig PipelineConfig::Defaults() {
  PipelineConfig config;
  config.asset_dir = DefaultAssetDir();
  config.assets = DefaultAssets(config.asset_dir);
  return config;
}

PipelineConfig PipelineConfig::FromJson(const json &j, const fs::path &base) {
  static const std::set<std::string> kKnown = {
      "gazetteers",         "bbox",          "asset_dir",
      "assets",             "spelling_correction",
      "max_edit_distance",  "partial_tp_credit",
      "eval_mode",          "workers",       "model_cache"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto &[key, value] : j.items()) {
    if (!kKnown.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }

  PipelineConfig config;
  config.asset_dir = j.contains("asset_dir")
                         ? Resolve(base, Get<std::string>(j, "asset_dir"))
                         : DefaultAssetDir();
  config.assets = DefaultAssets(config.asset_dir);
  if (j.contains("assets")) {
    const json &a = j.at("assets");
    if (!a.is_object()) throw ConfigError("config field 'assets' must be an object");
    const std::map<std::string, fs::path *> slots = {
        {"stopwords", &config.assets.stopwords},
        {"english_unigrams", &config.assets.english_unigrams},
        {"category_words", &config.assets.category_words},
        {"bracket_phrases", &config.assets.bracket_phrases},
        {"stopnames", &config.assets.stopnames},
        {"street_suffixes", &config.assets.street_suffixes},
        {"osm_abbreviations", &config.assets.osm_abbreviations}};
    for (const auto &[key, value] : a.items()) {
      auto it = slots.find(key);
      if (it == slots.end() || !value.is_string()) {
        throw ConfigError("bad asset entry '" + key + "'");
      }
      *it->second = Resolve(config.asset_dir, value.get<std::string>());
    }
  }

  if (j.contains("gazetteers")) {
    const json &list = j.at("gazetteers");
    if (!list.is_array()) throw ConfigError("config field 'gazetteers' must be an array");
    for (const json &g : list) {
      GazetteerSourceConfig src;
      src.path = Resolve(base, Get<std::string>(g, "path"));
      src.format = ParseGazetteerFormat(Get<std::string>(g, "format"));
      if (g.contains("id_prefix")) src.id_prefix = Get<std::string>(g, "id_prefix");
      config.gazetteers.push_back(std::move(src));
    }
  }
  if (j.contains("bbox") && !j.at("bbox").is_null()) {
    const auto box = Get<std::vector<double>>(j, "bbox");
    if (box.size() != 4) throw ConfigError("bbox must be [south, west, north, east]");
    config.bbox = BoundingBox{box[0], box[1], box[2], box[3]};
    config.bbox->Validate();
  }
  if (j.contains("spelling_correction")) {
    config.spelling_correction = Get<bool>(j, "spelling_correction");
  }
  if (j.contains("max_edit_distance")) {
    config.max_edit_distance = Get<int>(j, "max_edit_distance");
    if (config.max_edit_distance < 1 || config.max_edit_distance > 3) {
      throw ConfigError("max_edit_distance must be in [1, 3]");
    }
  }
  if (j.contains("partial_tp_credit")) {
    config.partial_tp_credit = Get<double>(j, "partial_tp_credit");
    if (config.partial_tp_credit < 0 || config.partial_tp_credit > 1) {
      throw ConfigError("partial_tp_credit must be in [0, 1]");
    }
  }
  if (j.contains("eval_mode")) {
    config.eval_mode = ParseEvalMode(Get<std::string>(j, "eval_mode"));
  }
  if (j.contains("workers")) {
    const int workers = Get<int>(j, "workers");
    if (workers < 1) throw ConfigError("workers must be a positive integer");
    config.workers = static_cast<unsigned>(workers);
  }
  if (j.contains("model_cache")) {
    config.model_cache = Resolve(base, Get<std::string>(j, "model_cache"));
  }
  return config;
}

PipelineConfig PipelineConfig::Load(const fs::path &path) {
  if (!fs::is_regular_file(path)) {
    throw ConfigError("config not found: " + path.string());
  }
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error &e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return FromJson(j, fs::absolute(path).parent_path());
}

void PipelineConfig::Validate(bool need_gazetteers) const {
  if (need_gazetteers && gazetteers.empty()) {
    throw ConfigError("config lists no gazetteers");
  }
  for (const GazetteerSourceConfig &g : gazetteers) RequireFile(g.path, "gazetteer");
  RequireFile(assets.stopwords, "stop word list");
  RequireFile(assets.english_unigrams, "frequency list");
  RequireFile(assets.category_words, "category word list");
  RequireFile(assets.bracket_phrases, "bracket phrase list");
  RequireFile(assets.stopnames, "stopname list");
  RequireFile(assets.street_suffixes, "street suffix table");
  RequireFile(assets.osm_abbreviations, "abbreviation table");
}

CompiledModel BuildModel(const PipelineConfig &config,
                         GazetteerBuildStats *stats) {
  config.Validate(true);
  std::vector<GazetteerEntry> entries;
  for (const GazetteerSourceConfig &src : config.gazetteers) {
    for (GazetteerEntry &e : LoadGazetteer(src.path, src.format, config.bbox)) {
      e.id = src.id_prefix + e.id;
      entries.push_back(std::move(e));
    }
  }
  CompiledModel out;
  out.gazetteer = Gazetteer::Build(
      entries, ReadWordList(config.assets.stopnames),
      ReadWordList(config.assets.bracket_phrases),
      ReadWordList(config.assets.category_words), stats);
  if (out.gazetteer.empty()) throw DataError("gazetteer has no usable names");
  out.model = LanguageModel::Compute(out.gazetteer);
  return out;
}

Pipeline::Pipeline(const PipelineConfig &config, CompiledModel compiled)
    : config_(config),
      compiled_(std::move(compiled)),
      suffixes_(AbbreviationDictionary::Load(config_.assets.street_suffixes)),
      osm_(AbbreviationDictionary::Load(config_.assets.osm_abbreviations)),
      preprocessor_(MakePreprocessor(config_, compiled_)),
      extractor_(compiled_.gazetteer, compiled_.model, preprocessor_, suffixes_,
                 osm_) {}

nlohmann::ordered_json MentionToJson(const LocationMention &m) {
  nlohmann::ordered_json j;
  j["surface"] = m.surface;
  j["matched_name"] = m.matched_name;
  j["char_start"] = m.char_start;
  j["char_end"] = m.char_end;
  j["entry_ids"] = m.entry_ids;
  j["from_hashtag"] = m.from_hashtag;
  return j;
}

std::string ProcessLine(std::string_view line, std::size_t line_no,
                        const Extractor &extractor) {
  json id = nullptr;
  try {
    const json in = json::parse(line);
    if (!in.is_object()) return ErrorRecord(id, line_no, "expected a JSON object");
    if (auto it = in.find("id"); it != in.end() &&
                                 (it->is_string() || it->is_number_integer())) {
      id = *it;
    } else {
      return ErrorRecord(id, line_no, "missing string field 'id'");
    }
    auto text = in.find("text");
    if (text == in.end() || !text->is_string()) {
      return ErrorRecord(id, line_no, "missing string field 'text'");
    }
    nlohmann::ordered_json out;
    out["id"] = id;
    out["mentions"] = nlohmann::ordered_json::array();
    for (const LocationMention &m :
         extractor.Extract(text->get_ref<const std::string &>())) {
      out["mentions"].push_back(MentionToJson(m));
    }
    return out.dump(-1, ' ', false, kReplace);
  } catch (const json::parse_error &e) {
    return ErrorRecord(id, line_no, std::string("invalid JSON: ") + e.what());
  } catch (const std::exception &e) {
    return ErrorRecord(id, line_no, e.what());
  }
}

std::size_t ProcessStream(std::istream &in, std::ostream &out,
                          const Extractor &extractor, unsigned workers,
                          std::size_t batch_size) {
  workers = std::max(workers, 1u);
  batch_size = std::max<std::size_t>(batch_size, 1);
  std::vector<std::string> lines;
  std::vector<std::string> results;
  std::size_t processed = 0;
  for (;;) {
    lines.clear();
    std::string line;
    while (lines.size() < batch_size && std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
    if (lines.empty()) break;

    results.assign(lines.size(), std::string());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < lines.size(); i = next++) {
        results[i] = ProcessLine(lines[i], processed + i + 1, extractor);
      }
    };
    const unsigned lanes =
        static_cast<unsigned>(std::min<std::size_t>(workers, lines.size()));
    if (lanes <= 1) {
      work();
    } else {
      std::vector<std::jthread> threads;
      for (unsigned t = 0; t < lanes; ++t) threads.emplace_back(work);
    }
    for (const std::string &r : results) out << r << '\n';
    processed += lines.size();
  }
  out.flush();
  return processed;
}

std::vector<GoldDocument> LoadGoldDirectory(const fs::path &dir, bool bundle) {
  if (!fs::is_directory(dir)) {
    throw DataError("gold directory not found: " + dir.string());
  }
  std::vector<fs::path> anns;
  for (const fs::directory_entry &e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".ann") {
      anns.push_back(e.path());
    }
  }
  std::sort(anns.begin(), anns.end());

  std::vector<GoldDocument> docs;
  for (const fs::path &ann : anns) {
    fs::path txt = ann;
    txt.replace_extension(".txt");
    if (!fs::is_regular_file(txt)) {
      throw DataError("missing text for annotations: " + txt.string());
    }
    const std::string text = ReadFile(txt);
    const std::string stem = ann.stem().string();
    std::vector<GoldAnnotation> gold =
        ParseAnnotations(ReadFile(ann), text, stem);
    if (!bundle) {
      docs.push_back(GoldDocument{stem, text, std::move(gold)});
      continue;
    }

    std::vector<std::string_view> lines = Split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    std::vector<std::size_t> line_start;  // in code points
    std::size_t offset = 0;
    const std::size_t first_doc = docs.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_start.push_back(offset);
      offset += Utf8Length(lines[i]) + 1;
      std::string_view body = lines[i];
      if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
      docs.push_back(GoldDocument{stem + ":" + std::to_string(i + 1),
                                  std::string(body), {}});
    }
    for (GoldAnnotation &g : gold) {
      const auto it = std::upper_bound(line_start.begin(), line_start.end(),
                                       g.char_start);
      const std::size_t line = static_cast<std::size_t>(it - line_start.begin()) - 1;
      const std::size_t base = line_start[line];
      if (g.char_end - base > Utf8Length(docs[first_doc + line].text)) {
        throw DataError("annotation " + g.id + " in " + ann.string() +
                        " spans a line break");
      }
      g.char_start -= base;
      g.char_end -= base;
      g.doc_id = docs[first_doc + line].id;
      docs[first_doc + line].annotations.push_back(std::move(g));
    }
  }
  return docs;
}

std::vector<std::pair<std::string, std::vector<LocationMention>>>
LoadPredictions(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read predictions: " + path.string());
  std::vector<std::pair<std::string, std::vector<LocationMention>>> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    try {
      const json rec = json::parse(line);
      if (rec.contains("error")) {
        if (rec.contains("id") && !rec.at("id").is_null()) {
          out.emplace_back(IdString(rec.at("id")), std::vector<LocationMention>{});
        }
        continue;
      }
      std::vector<LocationMention> mentions;
      for (const json &m : rec.at("mentions")) {
        LocationMention lm;
        lm.surface = m.value("surface", "");
        lm.matched_name = m.value("matched_name", "");
        lm.char_start = m.at("char_start").get<std::size_t>();
        lm.char_end = m.at("char_end").get<std::size_t>();
        lm.entry_ids = m.value("entry_ids", std::vector<std::string>{});
        lm.from_hashtag = m.value("from_hashtag", false);
        if (lm.char_start >= lm.char_end) throw DataError("empty mention span");
        mentions.push_back(std::move(lm));
      }
      out.emplace_back(IdString(rec.at("id")), std::move(mentions));
    } catch (const std::exception &e) {
      throw DataError("predictions " + path.string() + ": " + e.what(), line_no);
    }
  }
  return out;
}

EvaluationResult Evaluate(
    const std::vector<std::pair<std::string, std::vector<LocationMention>>>
        &predictions,
    const std::vector<GoldDocument> &gold, EvalMode mode,
    double partial_tp_credit) {
  if (gold.empty()) throw DataError("no gold documents to evaluate against");
  std::map<std::string, const std::vector<LocationMention> *> by_id;
  for (const auto &[id, mentions] : predictions) {
    if (!by_id.emplace(id, &mentions).second) {
      throw DataError("duplicate prediction id '" + id + "'");
    }
  }

  EvaluationResult result;
  std::set<std::string> gold_ids;
  std::vector<ScoreReport> reports;
  for (const GoldDocument &doc : gold) {
    gold_ids.insert(doc.id);
    const std::vector<GoldAnnotation> spans =
        NormalizeHashtagSpans(doc.annotations, doc.text);
    auto it = by_id.find(doc.id);
    std::span<const LocationMention> predicted;
    if (it == by_id.end()) {
      result.missing.push_back(doc.id);
    } else {
      predicted = *it->second;
    }
    ScoreReport r = MatchSpans(predicted, spans, mode, partial_tp_credit);
    result.documents.push_back(DocumentScore{doc.id, r});
    reports.push_back(r);
  }
  for (const auto &[id, mentions] : predictions) {
    if (!gold_ids.contains(id)) result.unknown.push_back(id);
  }
  result.aggregate = Aggregate(reports);
  return result;
}

nlohmann::ordered_json ToJson(const EvaluationResult &result, EvalMode mode) {
  nlohmann::ordered_json j;
  j["mode"] = EvalModeName(mode);
  j["documents"] = nlohmann::ordered_json::array();
  for (const DocumentScore &d : result.documents) {
    nlohmann::ordered_json doc;
    doc["id"] = d.id;
    doc.update(ToJson(d.report));
    j["documents"].push_back(std::move(doc));
  }
  j["aggregate"] = ToJson(result.aggregate);
  j["missing"] = result.missing;
  j["unknown"] = result.unknown;
  return j;
}

}  // namespace locx
