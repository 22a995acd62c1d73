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
#include <utility>
#include <vector>

#include "medkit/label.hpp"

namespace medkit {

/// (prediction, gold) pair; a nullopt prediction is an abstention
/// (e.g. unparseable generative output) and counts as wrong.
using ScoredPair = std::pair<std::optional<EventLabel>, EventLabel>;

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct AggregateMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class Averaging { macro, weighted };

struct MetricsReport {
  std::array<ClassMetrics, kNumLabels> per_class;
  AggregateMetrics macro;
  AggregateMetrics weighted;
  /// confusion[gold][pred]; abstentions are tallied separately so rows sum
  /// to per-class support minus abstained.
  std::array<std::array<std::int64_t, kNumLabels>, kNumLabels> confusion{};
  std::array<std::int64_t, kNumLabels> abstained{};
  std::size_t total = 0;
  double accuracy = 0.0;

  const AggregateMetrics& aggregate(Averaging mode) const {
    return mode == Averaging::macro ? macro : weighted;
  }
};

/// Precision/recall/F1 with 0/0 treated as 0. Weighted recall is computed
/// as total TP over total N, the same arithmetic as accuracy. Throws
/// ContractError on empty input.
MetricsReport score(std::span<const ScoredPair> pairs);

/// Table-style report rendering.
enum class ReportFormat { markdown, csv };
enum class ModelSection { supervised, generative };

struct NamedReport {
  std::string name;
  ModelSection section = ModelSection::supervised;
  MetricsReport metrics;
};

/// Rows in the given order grouped under Supervised/Generative headers,
/// P/R/F1 printed to 4 decimal places. Empty names render as "(unnamed)".
std::string emit_report(std::span<const NamedReport> reports,
                        ReportFormat format,
                        Averaging averaging = Averaging::weighted);

}  // namespace medkit
