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

#ifndef LOCX_MODEL_CACHE_H_
#define LOCX_MODEL_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "locx/gazetteer.h"
#include "locx/language_model.h"

namespace locx {

// A gazetteer together with the language model compiled from it.
struct CompiledModel {
  Gazetteer gazetteer;
  LanguageModel model;
};

inline constexpr std::uint32_t kModelCacheVersion = 1;

// Binary cache layout: 8-byte magic, u32 version, length-prefixed sections in
// a fixed order with every hash container written in sorted order, and a
// trailing FNV-1a 64 checksum of all preceding bytes. Equal inputs always
// produce identical bytes.
std::string SerializeModel(const CompiledModel &compiled);
CompiledModel DeserializeModel(std::string_view bytes);

void SaveModelCache(const std::filesystem::path &path,
                    const CompiledModel &compiled);
CompiledModel LoadModelCache(const std::filesystem::path &path);

std::uint64_t Fnv1a64(std::string_view bytes);

}  // namespace locx

#endif  // LOCX_MODEL_CACHE_H_
