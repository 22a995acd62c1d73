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

#include <filesystem>

#include "medkit/fusion.hpp"

namespace medkit {

/// Named-tensor archive: a one-line JSON header (head kind, dims, seed,
/// label order, tensor shapes) followed by raw little-endian doubles in
/// header order. Round-trips are bit-exact.
void save_checkpoint(const FusionParams& params,
                     const std::filesystem::path& path);

/// Throws FormatError on bad magic/header, ConfigError when the recorded
/// label order does not match the taxonomy or shapes are inconsistent.
FusionParams load_checkpoint(const std::filesystem::path& path);

}  // namespace medkit
