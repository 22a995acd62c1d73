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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medkit/label.hpp"
#include "medkit/manifest.hpp"

namespace medkit {

inline constexpr std::size_t kNumExemplars = 5;

/// Which test-instance modalities the prompt carries.
enum class ModalityMode { text_only, image_only, multimodal };

std::string_view modality_mode_name(ModalityMode mode);
ModalityMode parse_modality_mode(std::string_view name);

struct Exemplar {
  std::string image_ref;
  std::string text;
  EventLabel label = EventLabel::NonDamage;
};

struct TestInstance {
  std::optional<std::string> image_ref;
  std::optional<std::string> text;
};

/// The directive appended to every prompt.
inline constexpr std::string_view kOutputSchemaDirective =
    R"(Respond with JSON: {"event_class": "<one of 6 labels>"})";

/// Five-shot prompt: instruction, exemplars in order, test instance,
/// output-schema directive. serialize() is byte-deterministic.
struct PromptBundle {
  std::string task_instruction;
  std::array<Exemplar, kNumExemplars> exemplars;
  TestInstance test;
  std::string output_schema{kOutputSchemaDirective};
  ModalityMode modality_mode = ModalityMode::multimodal;

  std::string serialize() const;

  /// Image refs in attachment order: exemplars 1..5, then the test image.
  /// Empty in text-only mode.
  std::vector<std::string> attachment_refs() const;
};

/// Validates the contract (exactly five exemplars with both modalities,
/// test fields matching the mode) and assembles the bundle. Throws
/// ContractError on violations.
PromptBundle build_prompt(std::string instruction,
                          const std::vector<Exemplar>& exemplars,
                          TestInstance test, ModalityMode mode);

/// Default task instruction used by the CLI when none is supplied.
std::string default_task_instruction();

/// Seed-deterministic exemplar choice from the train split: NonDamage is
/// always represented, the other four exemplars come from four distinct
/// remaining classes. Throws ContractError when fewer than five classes
/// have train rows.
std::vector<Exemplar> select_exemplars(const DatasetManifest& manifest,
                                       std::uint64_t seed);

}  // namespace medkit
