//
// Copyright 2026 The medkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "medkit/linalg.hpp"

namespace medkit {

enum class Modality { text, vision };

std::string_view modality_name(Modality modality);

/// Fixed-dimension real vector produced by an encoder.
struct Embedding {
  Vec values;
  Modality modality = Modality::text;

  std::size_t dim() const { return values.size(); }
};

enum class EncoderBackend {
  toy_text,          // hashed bag-of-tokens through a seeded projection
  toy_vision,        // grayscale statistics through a seeded projection
  pretrained_text,   // precomputed embedding table produced offline
  pretrained_vision,
};

std::string_view backend_name(EncoderBackend backend);
EncoderBackend parse_backend(std::string_view name);

/// Declarative encoder description. `options` carries backend-specific
/// settings: toy backends require "seed"; pretrained backends require
/// "table" (path to a JSONL embedding table).
struct EncoderSpec {
  Modality modality = Modality::text;
  EncoderBackend backend = EncoderBackend::toy_text;
  std::size_t output_dim = 64;
  std::map<std::string, std::string> options;
};

/// Read-only after construction; concurrent encode calls are safe.
class TextEncoder {
 public:
  virtual ~TextEncoder() = default;
  virtual Embedding encode(std::string_view text) const = 0;
  virtual std::size_t dim() const = 0;
};

class VisionEncoder {
 public:
  virtual ~VisionEncoder() = default;
  virtual Embedding encode_bytes(std::span<const std::uint8_t> bytes) const = 0;
  virtual std::size_t dim() const = 0;

  /// Reads the file then delegates to encode_bytes; InputError names the
  /// path when the file is unreadable.
  Embedding encode_path(const std::filesystem::path& path) const;
};

/// Factory; throws ConfigError on inconsistent spec, BackendError when a
/// pretrained table fails to load.
std::unique_ptr<TextEncoder> make_text_encoder(const EncoderSpec& spec);
std::unique_ptr<VisionEncoder> make_vision_encoder(const EncoderSpec& spec);

/// Convenience wrappers matching the encoder operations one-to-one.
Embedding encode_text(const EncoderSpec& spec, std::string_view text);
Embedding encode_image(const EncoderSpec& spec,
                       const std::filesystem::path& path);
Embedding encode_image(const EncoderSpec& spec,
                       std::span<const std::uint8_t> bytes);

}  // namespace medkit
