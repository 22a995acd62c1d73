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
#include <span>
#include <string>
#include <string_view>

#include "medkit/label.hpp"

namespace medkit {

/// Failure modes of generative outputs.
enum class ErrorCategory {
  ImageCueError = 0,          // wrong answer driven by image evidence
  TextMisinterpretation = 1,  // wrong answer despite informative text
  UndefinedClass = 2,         // named a class outside the taxonomy
  InformationFabrication = 3, // unrequested prose instead of the schema
};

inline constexpr std::size_t kNumErrorCategories = 4;

std::string_view error_category_name(ErrorCategory category);

enum class ParseOutcome { clean, recovered, unparseable };

std::string_view parse_outcome_name(ParseOutcome outcome);

/// Result of parsing one raw model answer. `tier` records which rule
/// fired (1..5), for diagnostics:
///   1 clean       raw text is the JSON schema with a valid label
///   2 recovered   valid schema JSON embedded in surrounding prose
///   3 recovered   exactly one label named in prose (InformationFabrication)
///   4 unparseable out-of-taxonomy class in an event_class position
///   5 unparseable anything else (InformationFabrication)
struct GenerationResult {
  std::string raw_text;
  std::optional<EventLabel> parsed_label;
  ParseOutcome outcome = ParseOutcome::unparseable;
  std::optional<ErrorCategory> error_category;
  int tier = 5;
};

/// Total function: never throws, every input lands in exactly one tier.
GenerationResult parse_output(std::string_view raw);

/// Heuristic modality evidence: true when the text cannot explain a wrong
/// answer (under three tokens, or function words only), implicating the
/// image instead.
bool text_uninformative(std::string_view text);

struct ErrorCase {
  GenerationResult result;
  EventLabel gold = EventLabel::NonDamage;
  bool text_uninformative = false;
};

struct ErrorHistogram {
  std::array<std::size_t, kNumErrorCategories> counts{};
  std::array<double, kNumErrorCategories> percent{};
  std::size_t sample_size = 0;
};

/// Seeded uniform sample (without replacement) of `sample_size` erroneous
/// results (wrong label or unparseable), bucketed four ways: parse-derived
/// categories are kept; remaining wrong answers become ImageCueError when
/// the text was uninformative, else TextMisinterpretation. Throws
/// ContractError when fewer than sample_size errors exist.
ErrorHistogram categorize_errors(std::span<const ErrorCase> results,
                                 std::size_t sample_size, std::uint64_t seed);

}  // namespace medkit
