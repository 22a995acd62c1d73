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

#include "medkit/encoder.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "medkit/error.hpp"
#include "medkit/image.hpp"
#include "nlohmann/json.hpp"

namespace medkit {

namespace {

constexpr std::size_t kTextHashBuckets = 512;
constexpr std::size_t kVisionGrid = 8;
// channel mean + channel variance + 8x8 luminance grid + constant bias
constexpr std::size_t kVisionFeatures = 2 + kVisionGrid * kVisionGrid + 1;

std::uint64_t require_seed(const EncoderSpec& spec) {
  auto it = spec.options.find("seed");
  if (it == spec.options.end())
    throw ConfigError("toy encoder requires a 'seed' option");
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw ConfigError("toy encoder seed is not an integer: '" + it->second + "'");
  }
}

// Seeded projection matrix, entries uniform in [-1, 1) scaled by
// 1/sqrt(input rows) so projected norms stay O(1).
Matrix seeded_projection(std::uint64_t seed, std::size_t in, std::size_t out) {
  SeededRng rng(mix64(seed));
  Matrix p(in, out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(in));
  for (double& v : p.a) v = rng.symmetric(1.0) * scale;
  return p;
}

void l2_normalize(Vec& v) {
  const double norm = l2_norm(v);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
}

class ToyTextEncoder : public TextEncoder {
 public:
  explicit ToyTextEncoder(const EncoderSpec& spec)
      : dim_(spec.output_dim),
        projection_(seeded_projection(require_seed(spec), kTextHashBuckets,
                                      spec.output_dim)) {
    if (dim_ == 0) throw ConfigError("encoder output_dim must be positive");
  }

  Embedding encode(std::string_view text) const override {
    Vec out(dim_, 0.0);
    std::size_t start = 0;
    auto feed_token = [&](std::string_view token) {
      const std::size_t bucket = fnv1a64(token) % kTextHashBuckets;
      const auto row = projection_.row(bucket);
      for (std::size_t c = 0; c < dim_; ++c) out[c] += row[c];
    };
    for (std::size_t i = 0; i <= text.size(); ++i) {
      const bool boundary =
          i == text.size() || std::isspace(static_cast<unsigned char>(text[i]));
      if (!boundary) continue;
      if (i > start) feed_token(text.substr(start, i - start));
      start = i + 1;
    }
    l2_normalize(out);
    return Embedding{std::move(out), Modality::text};
  }

  std::size_t dim() const override { return dim_; }

 private:
  std::size_t dim_;
  Matrix projection_;
};

class ToyVisionEncoder : public VisionEncoder {
 public:
  explicit ToyVisionEncoder(const EncoderSpec& spec)
      : dim_(spec.output_dim),
        projection_(seeded_projection(require_seed(spec) ^ 0x76697369ULL,
                                      kVisionFeatures, spec.output_dim)) {
    if (dim_ == 0) throw ConfigError("encoder output_dim must be positive");
  }

  Embedding encode_bytes(std::span<const std::uint8_t> bytes) const override {
    const GrayImage image = decode_gray_image(bytes);
    const Vec features = extract_features(image);
    Vec out = matvec_transposed_features(features);
    l2_normalize(out);
    return Embedding{std::move(out), Modality::vision};
  }

  std::size_t dim() const override { return dim_; }

 private:
  Vec extract_features(const GrayImage& image) const {
    Vec f;
    f.reserve(kVisionFeatures);
    double mean = 0.0;
    for (std::uint8_t p : image.pixels) mean += p;
    mean /= static_cast<double>(image.pixels.size());
    double var = 0.0;
    for (std::uint8_t p : image.pixels) {
      const double d = p - mean;
      var += d * d;
    }
    var /= static_cast<double>(image.pixels.size());
    f.push_back(mean / 255.0);
    f.push_back(var / (255.0 * 255.0));

    // Mean-pooled 8x8 luminance grid; cells cover the image evenly.
    for (std::size_t gy = 0; gy < kVisionGrid; ++gy) {
      for (std::size_t gx = 0; gx < kVisionGrid; ++gx) {
        const std::size_t x0 = gx * image.width / kVisionGrid;
        const std::size_t x1 =
            std::max(x0 + 1, (gx + 1) * image.width / kVisionGrid);
        const std::size_t y0 = gy * image.height / kVisionGrid;
        const std::size_t y1 =
            std::max(y0 + 1, (gy + 1) * image.height / kVisionGrid);
        double cell = 0.0;
        std::size_t n = 0;
        for (std::size_t y = y0; y < y1 && y < image.height; ++y) {
          for (std::size_t x = x0; x < x1 && x < image.width; ++x) {
            cell += image.at(x, y);
            ++n;
          }
        }
        f.push_back(n ? cell / (255.0 * static_cast<double>(n)) : 0.0);
      }
    }
    f.push_back(1.0);  // bias keeps all-black images away from the zero vector
    return f;
  }

  Vec matvec_transposed_features(const Vec& features) const {
    return matvec_transposed(projection_, features);
  }

  std::size_t dim_;
  Matrix projection_;
};

// Embedding table computed offline by a real pretrained encoder and dumped
// as JSONL records {"key": ..., "values": [...]}. Text keys are the raw
// input string; vision keys are the image path as given.
class TableLookup {
 public:
  TableLookup(const EncoderSpec& spec, Modality modality) : dim_(spec.output_dim) {
    auto it = spec.options.find("table");
    if (it == spec.options.end())
      throw ConfigError("pretrained encoder requires a 'table' option");
    path_ = it->second;
    std::ifstream in(path_);
    if (!in) throw BackendError("cannot open embedding table: " + path_);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
      if (record.is_discarded() || !record.contains("key") ||
          !record.contains("values")) {
        throw BackendError("embedding table " + path_ + " line " +
                           std::to_string(line_no) + " is malformed");
      }
      Vec values = record["values"].get<Vec>();
      if (values.size() != dim_) {
        throw BackendError("embedding table " + path_ + " line " +
                           std::to_string(line_no) + " has dim " +
                           std::to_string(values.size()) + ", expected " +
                           std::to_string(dim_));
      }
      table_[record["key"].get<std::string>()] = std::move(values);
    }
    modality_ = modality;
  }

  Embedding lookup(const std::string& key) const {
    auto it = table_.find(key);
    if (it == table_.end()) {
      throw BackendError("embedding table " + path_ + " has no entry for key '" +
                         key + "'");
    }
    return Embedding{it->second, modality_};
  }

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  std::string path_;
  Modality modality_;
  std::unordered_map<std::string, Vec> table_;
};

class TableTextEncoder : public TextEncoder {
 public:
  explicit TableTextEncoder(const EncoderSpec& spec)
      : table_(spec, Modality::text) {}
  Embedding encode(std::string_view text) const override {
    return table_.lookup(std::string(text));
  }
  std::size_t dim() const override { return table_.dim(); }

 private:
  TableLookup table_;
};

class TableVisionEncoder : public VisionEncoder {
 public:
  explicit TableVisionEncoder(const EncoderSpec& spec)
      : table_(spec, Modality::vision) {}
  Embedding encode_bytes(std::span<const std::uint8_t> bytes) const override {
    // Byte payloads are keyed by content hash.
    return table_.lookup(
        "bytes:" + hex64(fnv1a64(std::string_view(
                       reinterpret_cast<const char*>(bytes.data()), bytes.size()))));
  }
  std::size_t dim() const override { return table_.dim(); }

 private:
  TableLookup table_;
};

}  // namespace

std::string_view modality_name(Modality modality) {
  return modality == Modality::text ? "text" : "vision";
}

std::string_view backend_name(EncoderBackend backend) {
  switch (backend) {
    case EncoderBackend::toy_text:
      return "toy-text";
    case EncoderBackend::toy_vision:
      return "toy-vision";
    case EncoderBackend::pretrained_text:
      return "pretrained-transformer-text";
    case EncoderBackend::pretrained_vision:
      return "pretrained-cnn-vision";
  }
  return "";
}

EncoderBackend parse_backend(std::string_view name) {
  if (name == "toy-text" || name == "toy") return EncoderBackend::toy_text;
  if (name == "toy-vision") return EncoderBackend::toy_vision;
  if (name == "pretrained-transformer-text" || name == "pretrained-text")
    return EncoderBackend::pretrained_text;
  if (name == "pretrained-cnn-vision" || name == "pretrained-vision")
    return EncoderBackend::pretrained_vision;
  throw ConfigError("unknown encoder backend: '" + std::string(name) + "'");
}

Embedding VisionEncoder::encode_path(const std::filesystem::path& path) const {
  const std::vector<std::uint8_t> bytes = read_file_bytes(path);
  return encode_bytes(bytes);
}

std::unique_ptr<TextEncoder> make_text_encoder(const EncoderSpec& spec) {
  if (spec.modality != Modality::text)
    throw ConfigError("text encoder spec has vision modality");
  switch (spec.backend) {
    case EncoderBackend::toy_text:
      return std::make_unique<ToyTextEncoder>(spec);
    case EncoderBackend::pretrained_text:
      return std::make_unique<TableTextEncoder>(spec);
    default:
      throw ConfigError("backend is not a text backend: " +
                        std::string(backend_name(spec.backend)));
  }
}

std::unique_ptr<VisionEncoder> make_vision_encoder(const EncoderSpec& spec) {
  if (spec.modality != Modality::vision)
    throw ConfigError("vision encoder spec has text modality");
  switch (spec.backend) {
    case EncoderBackend::toy_vision:
      return std::make_unique<ToyVisionEncoder>(spec);
    case EncoderBackend::pretrained_vision:
      return std::make_unique<TableVisionEncoder>(spec);
    default:
      throw ConfigError("backend is not a vision backend: " +
                        std::string(backend_name(spec.backend)));
  }
}

Embedding encode_text(const EncoderSpec& spec, std::string_view text) {
  return make_text_encoder(spec)->encode(text);
}

Embedding encode_image(const EncoderSpec& spec,
                       const std::filesystem::path& path) {
  return make_vision_encoder(spec)->encode_path(path);
}

Embedding encode_image(const EncoderSpec& spec,
                       std::span<const std::uint8_t> bytes) {
  return make_vision_encoder(spec)->encode_bytes(bytes);
}

}  // namespace medkit
