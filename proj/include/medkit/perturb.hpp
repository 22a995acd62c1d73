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
#include <string>
#include <string_view>

namespace medkit {

/// Social-media noise generators. code_mixing is a reserved slot: it needs
/// a bilingual lexicon and is rejected by perturb().
enum class PerturbKind { leetspeak, elongation, typo, caps_noise, code_mixing };

std::string_view perturb_kind_name(PerturbKind kind);
PerturbKind parse_perturb_kind(std::string_view name);

struct PerturbationSpec {
  PerturbKind kind = PerturbKind::leetspeak;
  /// Fraction of eligible sites transformed. Site selection hashes
  /// (seed, site index, kind) against this threshold, so the transformed
  /// set at intensity p is a subset of the set at any q >= p.
  double intensity = 1.0;
  std::uint64_t seed = 0;
  /// Leetspeak source characters to substitute; subsets of "aeiost"
  /// reproduce partial substitutions like "d!ed".
  std::string leet_chars = "aeiost";
};

/// Pure and deterministic: identical (text, spec) gives identical output
/// across runs and platforms. Intensity 0 is the identity.
///
/// leetspeak: a->4 e->3 i->! o->0 s->5 t->7, whole word "great" -> "gr8".
/// elongation: first vowel of the word tripled; sentence-final words get
///   "!!!" (replacing any trailing sentence punctuation).
/// typo: one adjacent character swap inside the word.
/// caps_noise: flips the case of selected characters.
std::string perturb(std::string_view text, const PerturbationSpec& spec);

/// Clean reference for measuring degradation: lowercases, undoes the
/// leetspeak table where the result is a dictionary word ("gr8" -> "great"),
/// collapses runs of 3+ repeated letters, strips repeated terminal
/// punctuation down to one.
std::string denoise_reference(std::string_view text);

}  // namespace medkit
