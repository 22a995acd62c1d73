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

#include "medkit/output_parse.hpp"

#include <cctype>
#include <vector>

#include "medkit/error.hpp"
#include "medkit/linalg.hpp"
#include "medkit/wordlist.hpp"
#include "nlohmann/json.hpp"

namespace medkit {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// The string value found under an event_class key, whether or not it names
// a taxonomy member.
std::optional<std::string> event_class_value(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("event_class")) return std::nullopt;
  const auto& value = j["event_class"];
  if (!value.is_string()) return std::nullopt;
  return value.get<std::string>();
}

// Balanced-brace JSON fragments embedded in prose, in order of appearance.
std::vector<std::string> embedded_json_objects(std::string_view raw) {
  std::vector<std::string> fragments;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '{') continue;
    int depth = 0;
    bool in_string = false;
    for (std::size_t j = i; j < raw.size(); ++j) {
      const char c = raw[j];
      if (in_string) {
        if (c == '\\') ++j;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}') {
        if (--depth == 0) {
          fragments.emplace_back(raw.substr(i, j - i + 1));
          break;
        }
      }
    }
  }
  return fragments;
}

// Labels appearing in prose with a left word boundary; "flooding" counts
// for Flood. Hyphenated display names also match their spaced form.
std::vector<EventLabel> labels_in_prose(std::string_view raw) {
  const std::string haystack = to_lower(raw);
  std::vector<EventLabel> found;
  for (EventLabel label : all_labels()) {
    std::vector<std::string> needles{to_lower(display_name(label))};
    std::string spaced = needles[0];
    bool had_hyphen = false;
    for (char& c : spaced) {
      if (c == '-') {
        c = ' ';
        had_hyphen = true;
      }
    }
    if (had_hyphen) needles.push_back(spaced);

    bool hit = false;
    for (const std::string& needle : needles) {
      for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
           pos = haystack.find(needle, pos + 1)) {
        const bool boundary =
            pos == 0 ||
            !std::isalnum(static_cast<unsigned char>(haystack[pos - 1]));
        if (boundary) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) found.push_back(label);
  }
  return found;
}

// Candidate class names in textual event_class positions, e.g.
// "Event: Tsunami" or "event_class: Tsunami".
std::vector<std::string> prose_event_candidates(std::string_view raw) {
  std::vector<std::string> candidates;
  const std::string haystack = to_lower(raw);
  for (std::string_view marker : {"event_class", "event:"}) {
    for (std::size_t pos = haystack.find(marker); pos != std::string::npos;
         pos = haystack.find(marker, pos + marker.size())) {
      std::size_t at = pos + marker.size();
      while (at < raw.size() &&
             (raw[at] == ':' || raw[at] == '=' || raw[at] == '"' ||
              std::isspace(static_cast<unsigned char>(raw[at])))) {
        ++at;
      }
      std::string candidate;
      while (at < raw.size() && raw[at] != '\n' && raw[at] != '"' &&
             raw[at] != ',' && raw[at] != '}' && raw[at] != '.') {
        candidate.push_back(raw[at]);
        ++at;
      }
      candidate = std::string(trim(candidate));
      if (!candidate.empty()) candidates.push_back(candidate);
    }
  }
  return candidates;
}

}  // namespace

std::string_view error_category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::ImageCueError:
      return "ImageCueError";
    case ErrorCategory::TextMisinterpretation:
      return "TextMisinterpretation";
    case ErrorCategory::UndefinedClass:
      return "UndefinedClass";
    case ErrorCategory::InformationFabrication:
      return "InformationFabrication";
  }
  return "";
}

std::string_view parse_outcome_name(ParseOutcome outcome) {
  switch (outcome) {
    case ParseOutcome::clean:
      return "clean";
    case ParseOutcome::recovered:
      return "recovered";
    case ParseOutcome::unparseable:
      return "unparseable";
  }
  return "";
}

GenerationResult parse_output(std::string_view raw) {
  GenerationResult result;
  result.raw_text = std::string(raw);

  // Tier 1: the whole answer is schema JSON with a valid label.
  {
    nlohmann::json j = nlohmann::json::parse(trim(raw), nullptr, false);
    if (!j.is_discarded()) {
      if (auto value = event_class_value(j)) {
        if (auto label = parse_label(*value)) {
          result.parsed_label = *label;
          result.outcome = ParseOutcome::clean;
          result.tier = 1;
          return result;
        }
      }
    }
  }

  // Tier 2: schema JSON with a valid label embedded in surrounding prose.
  std::optional<std::string> invalid_candidate;
  for (const std::string& fragment : embedded_json_objects(raw)) {
    nlohmann::json j = nlohmann::json::parse(fragment, nullptr, false);
    if (j.is_discarded()) continue;
    auto value = event_class_value(j);
    if (!value) continue;
    if (auto label = parse_label(*value)) {
      result.parsed_label = *label;
      result.outcome = ParseOutcome::recovered;
      result.tier = 2;
      return result;
    }
    if (!invalid_candidate) invalid_candidate = *value;
  }

  // Tier 3: exactly one taxonomy label named in the prose.
  const std::vector<EventLabel> mentioned = labels_in_prose(raw);
  if (mentioned.size() == 1) {
    result.parsed_label = mentioned.front();
    result.outcome = ParseOutcome::recovered;
    result.error_category = ErrorCategory::InformationFabrication;
    result.tier = 3;
    return result;
  }

  // Tier 4: a class name outside the taxonomy in an event_class position.
  if (!invalid_candidate) {
    for (const std::string& candidate : prose_event_candidates(raw)) {
      if (!parse_label(candidate)) {
        invalid_candidate = candidate;
        break;
      }
    }
  }
  if (invalid_candidate) {
    result.outcome = ParseOutcome::unparseable;
    result.error_category = ErrorCategory::UndefinedClass;
    result.tier = 4;
    return result;
  }

  // Tier 5: free-form prose.
  result.outcome = ParseOutcome::unparseable;
  result.error_category = ErrorCategory::InformationFabrication;
  result.tier = 5;
  return result;
}

bool text_uninformative(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));

  if (tokens.size() < 3) return true;
  for (const std::string& token : tokens) {
    if (!is_stopword(token)) return false;
  }
  return true;
}

ErrorHistogram categorize_errors(std::span<const ErrorCase> results,
                                 std::size_t sample_size, std::uint64_t seed) {
  std::vector<std::size_t> erroneous;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const GenerationResult& r = results[i].result;
    const bool wrong = !r.parsed_label || *r.parsed_label != results[i].gold;
    if (wrong) erroneous.push_back(i);
  }
  if (erroneous.size() < sample_size) {
    throw ContractError("categorize_errors: requested sample of " +
                        std::to_string(sample_size) + " but only " +
                        std::to_string(erroneous.size()) + " errors available");
  }

  // Partial Fisher-Yates draw without replacement.
  SeededRng rng(mix64(seed ^ 0x65727273ULL));
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + rng.index(erroneous.size() - i);
    std::swap(erroneous[i], erroneous[j]);
  }
  erroneous.resize(sample_size);

  ErrorHistogram histogram;
  histogram.sample_size = sample_size;
  for (std::size_t i : erroneous) {
    const ErrorCase& item = results[i];
    ErrorCategory category;
    if (item.result.error_category &&
        (*item.result.error_category == ErrorCategory::UndefinedClass ||
         *item.result.error_category == ErrorCategory::InformationFabrication)) {
      category = *item.result.error_category;
    } else {
      category = item.text_uninformative ? ErrorCategory::ImageCueError
                                         : ErrorCategory::TextMisinterpretation;
    }
    histogram.counts[static_cast<std::size_t>(category)] += 1;
  }
  for (std::size_t c = 0; c < kNumErrorCategories; ++c) {
    histogram.percent[c] = 100.0 * static_cast<double>(histogram.counts[c]) /
                           static_cast<double>(sample_size);
  }
  return histogram;
}

}  // namespace medkit
