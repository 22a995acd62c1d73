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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "medkit/label.hpp"

namespace medkit {

/// One social-media post: tweet text plus a referenced image.
/// Immutable after load; safe to share read-only across workers.
struct Instance {
  std::string id;
  std::string text;
  std::string image_path;  // stored verbatim; existence checked lazily
  std::optional<EventLabel> label;
  Split split = Split::infer;
};

struct DatasetManifest {
  std::vector<Instance> rows;
  std::string source_path;

  /// Directory the manifest was loaded from; relative image paths resolve
  /// against it.
  std::filesystem::path base_dir() const {
    return std::filesystem::path(source_path).parent_path();
  }

  std::filesystem::path resolve_image(const Instance& instance) const {
    std::filesystem::path p(instance.image_path);
    if (p.is_absolute() || source_path.empty()) return p;
    return base_dir() / p;
  }

  std::vector<std::size_t> indices_of(Split split) const;
};

/// Loads a CSV manifest with header columns id,text,image_path,label,split.
/// The split column may be absent, in which case every row is `infer`.
/// Unlabeled rows (empty label field) are only permitted on infer rows.
///
/// Throws FormatError (bad header), RowError (bad field, with row number),
/// IntegrityError (duplicate id).
DatasetManifest load_manifest(const std::filesystem::path& path);

/// One line of the per-label statistics table.
struct StatsRow {
  std::string label;  // display name, or "Total" for the summary row
  std::size_t test = 0;
  std::size_t train = 0;
  std::size_t total = 0;
};

/// Per-label test/train/total counts ordered by descending total (ties by
/// taxonomy index), followed by a Total row. Every taxonomy label appears
/// even when its count is zero. Unlabeled rows are not counted.
std::vector<StatsRow> dataset_stats(const DatasetManifest& manifest);

/// Fixed-width text rendering of the stats table.
std::string format_stats_table(const std::vector<StatsRow>& rows);

/// Inverse-class-frequency weights over the labels present in the manifest:
/// weight(c) = N_train / count_train(c), normalized to sum 1. Every label
/// that appears anywhere in the manifest must occur in the train split at
/// least once, otherwise ConfigError.
std::map<EventLabel, double> class_weights(const DatasetManifest& manifest);

}  // namespace medkit
