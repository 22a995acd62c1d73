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

#include "medkit/perturb.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "medkit/error.hpp"
#include "medkit/linalg.hpp"
#include "medkit/wordlist.hpp"

namespace medkit {

namespace {

char leet_of(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'a':
      return '4';
    case 'e':
      return '3';
    case 'i':
      return '!';
    case 'o':
      return '0';
    case 's':
      return '5';
    case 't':
      return '7';
    default:
      return 0;
  }
}

std::optional<char> leet_inverse(char c) {
  switch (c) {
    case '4':
      return 'a';
    case '3':
      return 'e';
    case '!':
      return 'i';
    case '0':
      return 'o';
    case '5':
      return 's';
    case '7':
      return 't';
    default:
      return std::nullopt;
  }
}

bool is_vowel(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return true;
    default:
      return false;
  }
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Seeded uniform in [0, 1) for one perturbation site. Independent of
// intensity, so thresholding gives subset monotonicity across intensities.
double site_unit(std::uint64_t seed, std::uint64_t site, std::uint64_t salt) {
  const std::uint64_t h = mix64(mix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL)) ^ site);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct Token {
  std::string text;
  bool is_word = false;  // false for whitespace runs
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const bool space = std::isspace(static_cast<unsigned char>(text[i])) != 0;
    std::size_t j = i;
    while (j < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[j])) != 0) == space) {
      ++j;
    }
    tokens.push_back({std::string(text.substr(i, j - i)), !space});
    i = j;
  }
  return tokens;
}

// [prefix punct][core][suffix punct]
struct WordParts {
  std::string prefix, core, suffix;
};

WordParts split_word(const std::string& word) {
  std::size_t start = 0, end = word.size();
  while (start < end && !std::isalnum(static_cast<unsigned char>(word[start])))
    ++start;
  while (end > start && !std::isalnum(static_cast<unsigned char>(word[end - 1])))
    --end;
  return {word.substr(0, start), word.substr(start, end - start),
          word.substr(end)};
}

std::string apply_leet(const std::string& word, const std::string& chars) {
  WordParts parts = split_word(word);
  if (to_lower(parts.core) == "great" &&
      chars.find('a') != std::string::npos) {
    return parts.prefix + "gr8" + parts.suffix;
  }
  std::string out = word;
  for (char& c : out) {
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (chars.find(lower) == std::string::npos) continue;
    if (const char sub = leet_of(c)) c = sub;
  }
  return out;
}

std::string apply_elongation(const std::string& word, bool sentence_final) {
  WordParts parts = split_word(word);
  std::string core = parts.core;
  for (std::size_t i = 0; i < core.size(); ++i) {
    if (is_vowel(core[i])) {
      core.insert(i, 2, core[i]);  // vowel now appears 3 times in a row
      break;
    }
  }
  std::string suffix = parts.suffix;
  if (sentence_final) {
    while (!suffix.empty() && (suffix.back() == '.' || suffix.back() == '!' ||
                               suffix.back() == '?')) {
      suffix.pop_back();
    }
    suffix += "!!!";
  }
  return parts.prefix + core + suffix;
}

std::string apply_typo(const std::string& word, std::uint64_t seed,
                       std::uint64_t word_index) {
  WordParts parts = split_word(word);
  if (parts.core.size() < 2) return word;
  const std::uint64_t h =
      mix64(mix64(seed ^ 0x7479706f70735ULL) ^ word_index);
  const std::size_t pos = static_cast<std::size_t>(h % (parts.core.size() - 1));
  std::string core = parts.core;
  std::swap(core[pos], core[pos + 1]);
  return parts.prefix + core + parts.suffix;
}

constexpr std::uint64_t kind_salt(PerturbKind kind) {
  return 0x100 + static_cast<std::uint64_t>(kind);
}

}  // namespace

std::string_view perturb_kind_name(PerturbKind kind) {
  switch (kind) {
    case PerturbKind::leetspeak:
      return "leetspeak";
    case PerturbKind::elongation:
      return "elongation";
    case PerturbKind::typo:
      return "typo";
    case PerturbKind::caps_noise:
      return "caps_noise";
    case PerturbKind::code_mixing:
      return "code_mixing";
  }
  return "";
}

PerturbKind parse_perturb_kind(std::string_view name) {
  if (name == "leetspeak" || name == "leet") return PerturbKind::leetspeak;
  if (name == "elongation") return PerturbKind::elongation;
  if (name == "typo") return PerturbKind::typo;
  if (name == "caps_noise" || name == "caps") return PerturbKind::caps_noise;
  if (name == "code_mixing") return PerturbKind::code_mixing;
  throw ConfigError("unknown perturbation kind: '" + std::string(name) + "'");
}

std::string perturb(std::string_view text, const PerturbationSpec& spec) {
  if (spec.intensity < 0.0 || spec.intensity > 1.0)
    throw ConfigError("perturbation intensity must be in [0, 1]");
  if (spec.kind == PerturbKind::code_mixing) {
    throw ConfigError(
        "code_mixing is a reserved perturbation kind (no bilingual lexicon "
        "is bundled)");
  }
  if (spec.intensity == 0.0) return std::string(text);

  const std::uint64_t salt = kind_salt(spec.kind);

  if (spec.kind == PerturbKind::caps_noise) {
    // Character-level sites.
    std::string out(text);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!std::isalpha(static_cast<unsigned char>(out[i]))) continue;
      if (site_unit(spec.seed, i, salt) >= spec.intensity) continue;
      const unsigned char c = static_cast<unsigned char>(out[i]);
      out[i] = std::isupper(c) ? static_cast<char>(std::tolower(c))
                               : static_cast<char>(std::toupper(c));
    }
    return out;
  }

  // Word-level sites.
  std::vector<Token> tokens = tokenize(text);
  std::size_t last_word = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_word) last_word = i;
  }

  std::string out;
  std::uint64_t word_index = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& token = tokens[i];
    if (!token.is_word) {
      out += token.text;
      continue;
    }
    const std::uint64_t w = word_index++;
    if (site_unit(spec.seed, w, salt) >= spec.intensity) {
      out += token.text;
      continue;
    }
    switch (spec.kind) {
      case PerturbKind::leetspeak:
        out += apply_leet(token.text, spec.leet_chars);
        break;
      case PerturbKind::elongation: {
        const bool final_word =
            i == last_word ||
            token.text.find_last_of(".!?") != std::string::npos;
        out += apply_elongation(token.text, final_word);
        break;
      }
      case PerturbKind::typo:
        out += apply_typo(token.text, spec.seed, w);
        break;
      default:
        out += token.text;
        break;
    }
  }
  return out;
}

std::string denoise_reference(std::string_view text) {
  std::vector<Token> tokens = tokenize(to_lower(text));
  std::string out;
  for (const Token& token : tokens) {
    if (!token.is_word) {
      out += token.text;
      continue;
    }
    WordParts parts = split_word(token.text);

    // Repeated terminal punctuation collapses to a single mark.
    std::string suffix = parts.suffix;
    if (suffix.size() >= 2) {
      bool uniform = true;
      for (char c : suffix) uniform = uniform && c == suffix[0];
      if (uniform) suffix = suffix.substr(0, 1);
    }

    std::string core = parts.core;
    if (core == "gr8") {
      core = "great";
    } else {
      // Runs of 3+ repeated letters collapse to one.
      std::string collapsed;
      for (std::size_t i = 0; i < core.size();) {
        std::size_t j = i;
        while (j < core.size() && core[j] == core[i]) ++j;
        const std::size_t run = j - i;
        const bool letter = std::isalpha(static_cast<unsigned char>(core[i])) != 0;
        collapsed.append(letter && run >= 3 ? 1 : run, core[i]);
        i = j;
      }
      core = collapsed;

      // Invert the leetspeak table only when the result is a known word.
      std::string inverted = core;
      bool changed = false;
      for (char& c : inverted) {
        if (auto inv = leet_inverse(c)) {
          c = *inv;
          changed = true;
        }
      }
      if (changed && dictionary_contains(inverted)) core = inverted;
    }
    out += parts.prefix + core + suffix;
  }
  return out;
}

}  // namespace medkit
