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

#include <span>
#include <string_view>

namespace medkit {

/// Frequency-ordered English word list compiled into the binary; used to
/// disambiguate leetspeak inverses.
std::span<const std::string_view> dictionary_words();
bool dictionary_contains(std::string_view word);  // expects lowercase input

/// Function-word list used by the modality-evidence heuristic.
bool is_stopword(std::string_view word);  // expects lowercase input

}  // namespace medkit
