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

#include "medkit/label.hpp"

#include <cctype>

#include "medkit/error.hpp"

namespace medkit {

namespace {

// Lowercase with hyphens and whitespace removed.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    if (c == '-' || std::isspace(c)) continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

}  // namespace

std::string_view display_name(EventLabel label) {
  switch (label) {
    case EventLabel::NonDamage:
      return "Non-damage";
    case EventLabel::DamagedInfrastructure:
      return "Damaged Infrastructure";
    case EventLabel::DamagedNature:
      return "Damaged Nature";
    case EventLabel::Flood:
      return "Flood";
    case EventLabel::Fires:
      return "Fires";
    case EventLabel::HumanDamage:
      return "Human Damage";
  }
  return "";
}

std::optional<EventLabel> parse_label(std::string_view text) {
  const std::string key = normalize(text);
  for (EventLabel label : all_labels()) {
    if (key == normalize(display_name(label))) return label;
  }
  return std::nullopt;
}

EventLabel parse_label_or_throw(std::string_view text) {
  if (auto label = parse_label(text)) return *label;
  throw ConfigError("unknown event label: '" + std::string(text) + "'");
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::train:
      return "train";
    case Split::test:
      return "test";
    case Split::infer:
      return "infer";
  }
  return "";
}

std::optional<Split> parse_split(std::string_view text) {
  const std::string key = normalize(text);
  if (key == "train") return Split::train;
  if (key == "test") return Split::test;
  if (key == "infer") return Split::infer;
  return std::nullopt;
}

}  // namespace medkit
