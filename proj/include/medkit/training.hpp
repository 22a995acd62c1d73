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
#include <map>
#include <string>
#include <vector>

#include "medkit/encoder.hpp"
#include "medkit/fusion.hpp"
#include "medkit/manifest.hpp"

namespace medkit {

struct TrainConfig {
  int epochs_max = 30;
  int batch_size = 32;
  double lr_peak = 1e-2;
  double warmup_fraction = 0.1;  // of total steps, linear 0 -> lr_peak
  int patience = 3;              // epochs without val-F1 improvement
  std::uint64_t seed = 0;
  bool balanced_sampling = true;
  double val_fraction = 0.1;  // stratified carve from the train split

  void validate() const;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double loss = 0.0;
  double val_f1 = 0.0;
  double lr = 0.0;
};

struct TrainReport {
  int epochs_run = 0;
  double best_val_f1 = 0.0;
  bool stopped_early = false;
  std::vector<EpochStats> history;

  std::string to_json() const;
};

/// Linear warmup to lr_peak over warmup_fraction*total_steps, then cosine
/// decay to zero: lr = lr_peak * (1 + cos(pi * progress)) / 2.
double cosine_lr(std::int64_t step, std::int64_t total_steps,
                 const TrainConfig& cfg);

/// Infinite with-replacement stream over the train split: a class is drawn
/// proportionally to `weights`, then an instance uniformly within it.
/// Deterministic under a fixed seed.
class BalancedSampler {
 public:
  BalancedSampler(const DatasetManifest& manifest,
                  const std::map<EventLabel, double>& weights,
                  std::uint64_t seed);

  std::size_t next_index();
  const Instance& next();

 private:
  const DatasetManifest& manifest_;
  std::vector<double> cumulative_;                 // over classes
  std::vector<std::vector<std::size_t>> by_class_;  // row indices per class
  SeededRng rng_;
};

struct TrainResult {
  FusionParams params;
  TrainReport report;
};

/// Minibatch gradient descent on cross-entropy with the cosine schedule,
/// optional inverse-frequency balanced sampling, per-epoch weighted-F1
/// validation and early stopping. Returns the parameters of the best
/// validation epoch. Encoders not needed by the head may be null.
///
/// Throws ConfigError (empty train split, encoder/head mismatch) and
/// NumericError with step diagnostics when the loss diverges.
TrainResult train(const FusionConfig& config, const TextEncoder* text_encoder,
                  const VisionEncoder* vision_encoder,
                  const DatasetManifest& manifest, const TrainConfig& cfg);

}  // namespace medkit
