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

#include "medkit/prompt.hpp"

#include <algorithm>
#include <map>

#include "medkit/error.hpp"
#include "medkit/linalg.hpp"

namespace medkit {

std::string_view modality_mode_name(ModalityMode mode) {
  switch (mode) {
    case ModalityMode::text_only:
      return "text-only";
    case ModalityMode::image_only:
      return "image-only";
    case ModalityMode::multimodal:
      return "multimodal";
  }
  return "";
}

ModalityMode parse_modality_mode(std::string_view name) {
  if (name == "text-only" || name == "text") return ModalityMode::text_only;
  if (name == "image-only" || name == "image") return ModalityMode::image_only;
  if (name == "multimodal") return ModalityMode::multimodal;
  throw ConfigError("unknown modality mode: '" + std::string(name) + "'");
}

std::string PromptBundle::serialize() const {
  const bool with_text = modality_mode != ModalityMode::image_only;
  const bool with_image = modality_mode != ModalityMode::text_only;

  std::string out = task_instruction;
  out += "\n";
  for (std::size_t i = 0; i < kNumExemplars; ++i) {
    out += "\nExample " + std::to_string(i + 1) + ":\n";
    if (with_text) out += "Text: " + exemplars[i].text + "\n";
    if (with_image)
      out += "Image: <attachment-" + std::to_string(i + 1) + ">\n";
    out += "Event: " + std::string(display_name(exemplars[i].label)) + "\n";
  }
  out += "\nTest:\n";
  if (with_text && test.text) out += "Text: " + *test.text + "\n";
  if (with_image && test.image_ref)
    out += "Image: <attachment-" + std::to_string(kNumExemplars + 1) + ">\n";
  out += "\n" + output_schema + "\n";
  return out;
}

std::vector<std::string> PromptBundle::attachment_refs() const {
  std::vector<std::string> refs;
  if (modality_mode == ModalityMode::text_only) return refs;
  for (const Exemplar& exemplar : exemplars) refs.push_back(exemplar.image_ref);
  if (test.image_ref) refs.push_back(*test.image_ref);
  return refs;
}

PromptBundle build_prompt(std::string instruction,
                          const std::vector<Exemplar>& exemplars,
                          TestInstance test, ModalityMode mode) {
  if (exemplars.size() != kNumExemplars) {
    throw ContractError("build_prompt requires exactly " +
                        std::to_string(kNumExemplars) + " exemplars, got " +
                        std::to_string(exemplars.size()));
  }
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    if (exemplars[i].text.empty() || exemplars[i].image_ref.empty()) {
      throw ContractError("exemplar " + std::to_string(i + 1) +
                          " must carry both text and an image reference");
    }
  }
  const bool has_text = test.text.has_value();
  const bool has_image = test.image_ref.has_value();
  switch (mode) {
    case ModalityMode::text_only:
      if (!has_text || has_image)
        throw ContractError("text-only mode requires a text-only test instance");
      break;
    case ModalityMode::image_only:
      if (has_text || !has_image)
        throw ContractError("image-only mode requires an image-only test instance");
      break;
    case ModalityMode::multimodal:
      if (!has_text || !has_image)
        throw ContractError("multimodal mode requires both test modalities");
      break;
  }

  PromptBundle bundle;
  bundle.task_instruction = std::move(instruction);
  std::copy(exemplars.begin(), exemplars.end(), bundle.exemplars.begin());
  bundle.test = std::move(test);
  bundle.modality_mode = mode;
  return bundle;
}

std::string default_task_instruction() {
  std::string labels;
  for (EventLabel label : all_labels()) {
    if (!labels.empty()) labels += ", ";
    labels += display_name(label);
  }
  return "You are given social-media posts about possible disaster events. "
         "Classify each post into exactly one of the following event classes: " +
         labels +
         ". Use the text and the attached image together when both are "
         "present.";
}

std::vector<Exemplar> select_exemplars(const DatasetManifest& manifest,
                                       std::uint64_t seed) {
  std::map<EventLabel, std::vector<const Instance*>> by_class;
  for (const Instance& instance : manifest.rows) {
    if (instance.split != Split::train || !instance.label) continue;
    by_class[*instance.label].push_back(&instance);
  }
  if (!by_class.count(EventLabel::NonDamage)) {
    throw ContractError("exemplar selection needs NonDamage train rows");
  }
  std::vector<EventLabel> others;
  for (const auto& [label, pool] : by_class) {
    if (label != EventLabel::NonDamage) others.push_back(label);
  }
  if (others.size() < kNumExemplars - 1) {
    throw ContractError("exemplar selection needs train rows from at least " +
                        std::to_string(kNumExemplars) + " classes, found " +
                        std::to_string(others.size() + 1));
  }

  SeededRng rng(mix64(seed ^ 0x6578656dULL));
  // NonDamage plus four seed-chosen distinct disaster classes.
  rng.shuffle(others);
  others.resize(kNumExemplars - 1);
  std::sort(others.begin(), others.end());  // keep prompt order stable

  std::vector<EventLabel> chosen{EventLabel::NonDamage};
  chosen.insert(chosen.end(), others.begin(), others.end());

  std::vector<Exemplar> exemplars;
  for (EventLabel label : chosen) {
    const auto& pool = by_class[label];
    const Instance* pick = pool[rng.index(pool.size())];
    exemplars.push_back({pick->image_path, pick->text, label});
  }
  return exemplars;
}

}  // namespace medkit
