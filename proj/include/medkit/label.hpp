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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace medkit {

/// The six-way disaster event taxonomy. Index order is load-bearing:
/// probability vectors and confusion matrices are aligned to it, and
/// argmax ties break toward the lowest index.
enum class EventLabel : int {
  NonDamage = 0,
  DamagedInfrastructure = 1,
  DamagedNature = 2,
  Flood = 3,
  Fires = 4,
  HumanDamage = 5,
};

inline constexpr std::size_t kNumLabels = 6;

constexpr std::array<EventLabel, kNumLabels> all_labels() {
  return {EventLabel::NonDamage,      EventLabel::DamagedInfrastructure,
          EventLabel::DamagedNature,  EventLabel::Flood,
          EventLabel::Fires,          EventLabel::HumanDamage};
}

constexpr int label_index(EventLabel label) { return static_cast<int>(label); }

/// Canonical display string, e.g. "Damaged Infrastructure".
std::string_view display_name(EventLabel label);

/// Tolerant parse: case-insensitive, ignores whitespace and hyphens, so
/// "non-damage", "Non Damage" and "NONDAMAGE" all resolve. Returns nullopt
/// when the input names no taxonomy member.
std::optional<EventLabel> parse_label(std::string_view text);

/// Like parse_label but throws RowError-free ConfigError on failure.
EventLabel parse_label_or_throw(std::string_view text);

/// Train/test membership of an instance; `infer` marks rows that only
/// exist to be predicted and may be unlabeled.
enum class Split { train, test, infer };

std::string_view split_name(Split split);
std::optional<Split> parse_split(std::string_view text);

}  // namespace medkit
