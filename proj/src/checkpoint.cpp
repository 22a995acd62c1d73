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

#include "medkit/checkpoint.hpp"

#include <fstream>

#include "medkit/error.hpp"
#include "nlohmann/json.hpp"

namespace medkit {

namespace {

constexpr const char* kMagic = "MEDCKPT1";

nlohmann::json header_json(const FusionParams& params) {
  nlohmann::json header;
  header["format"] = "medkit-checkpoint";
  header["version"] = 1;
  header["head"] = std::string(head_name(params.config.head));
  header["dims"] = {{"d_text", params.config.d_text},
                    {"d_vision", params.config.d_vision},
                    {"d_model", params.config.d_model},
                    {"d_attn", params.config.d_attn},
                    {"chunks", params.config.chunks}};
  header["seed"] = params.seed;
  nlohmann::json labels = nlohmann::json::array();
  for (EventLabel label : all_labels()) labels.push_back(display_name(label));
  header["labels"] = labels;
  nlohmann::json tensors = nlohmann::json::array();
  for (const auto& [name, tensor] : params.tensors) {
    tensors.push_back(
        {{"name", name}, {"rows", tensor.rows}, {"cols", tensor.cols}});
  }
  header["tensors"] = tensors;
  return header;
}

}  // namespace

void save_checkpoint(const FusionParams& params,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write checkpoint: " + path.string());
  out << kMagic << '\n' << header_json(params).dump() << '\n';
  for (const auto& [name, tensor] : params.tensors) {
    out.write(reinterpret_cast<const char*>(tensor.a.data()),
              static_cast<std::streamsize>(tensor.a.size() * sizeof(double)));
  }
  if (!out) throw FormatError("failed writing checkpoint: " + path.string());
}

FusionParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint: " + path.string());

  std::string magic, header_line;
  if (!std::getline(in, magic) || magic != kMagic)
    throw FormatError("not a medkit checkpoint: " + path.string());
  if (!std::getline(in, header_line))
    throw FormatError("checkpoint header missing: " + path.string());
  nlohmann::json header = nlohmann::json::parse(header_line, nullptr, false);
  if (header.is_discarded())
    throw FormatError("checkpoint header is not valid JSON: " + path.string());

  FusionParams params;
  try {
    params.config.head = parse_head(header.at("head").get<std::string>());
    const auto& dims = header.at("dims");
    params.config.d_text = dims.at("d_text").get<std::size_t>();
    params.config.d_vision = dims.at("d_vision").get<std::size_t>();
    params.config.d_model = dims.at("d_model").get<std::size_t>();
    params.config.d_attn = dims.at("d_attn").get<std::size_t>();
    params.config.chunks = dims.at("chunks").get<std::size_t>();
    params.seed = header.at("seed").get<std::uint64_t>();

    const auto labels = header.at("labels");
    if (labels.size() != kNumLabels)
      throw ConfigError("checkpoint taxonomy has " +
                        std::to_string(labels.size()) + " labels, expected 6");
    for (std::size_t i = 0; i < kNumLabels; ++i) {
      const auto expected = display_name(static_cast<EventLabel>(static_cast<int>(i)));
      if (labels[i].get<std::string>() != expected) {
        throw ConfigError("checkpoint label order mismatch at index " +
                          std::to_string(i));
      }
    }

    params.config.validate();
    FusionParams reference = init_params(params.config, 0);
    for (const auto& entry : header.at("tensors")) {
      const std::string name = entry.at("name").get<std::string>();
      const auto rows = entry.at("rows").get<std::size_t>();
      const auto cols = entry.at("cols").get<std::size_t>();
      const Matrix& expected = reference.tensors.get(name);
      if (expected.rows != rows || expected.cols != cols) {
        throw ConfigError("checkpoint tensor '" + name + "' has shape " +
                          std::to_string(rows) + "x" + std::to_string(cols) +
                          ", expected " + std::to_string(expected.rows) + "x" +
                          std::to_string(expected.cols));
      }
      Matrix& tensor = params.tensors.add(name, rows, cols);
      in.read(reinterpret_cast<char*>(tensor.a.data()),
              static_cast<std::streamsize>(tensor.a.size() * sizeof(double)));
      if (!in) throw FormatError("checkpoint tensor data truncated: " + name);
    }
    // Every declared tensor must be present.
    for (const auto& [name, tensor] : reference.tensors) {
      if (!params.tensors.has(name))
        throw ConfigError("checkpoint is missing tensor '" + name + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("checkpoint header malformed: " + std::string(e.what()));
  }
  return params;
}

}  // namespace medkit
