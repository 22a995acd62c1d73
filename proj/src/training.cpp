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

#include "medkit/training.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "medkit/error.hpp"
#include "medkit/evaluation.hpp"
#include "nlohmann/json.hpp"

namespace medkit {

void TrainConfig::validate() const {
  if (epochs_max < 1) throw ConfigError("epochs_max must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (patience < 1) throw ConfigError("patience must be >= 1");
  if (!(lr_peak > 0.0)) throw ConfigError("lr_peak must be positive");
  if (warmup_fraction < 0.0 || warmup_fraction > 1.0)
    throw ConfigError("warmup_fraction must be in [0, 1]");
  if (!(val_fraction > 0.0 && val_fraction < 1.0))
    throw ConfigError("val_fraction must be in (0, 1)");
}

std::string TrainReport::to_json() const {
  nlohmann::json j;
  j["epochs_run"] = epochs_run;
  j["best_val_f1"] = best_val_f1;
  j["stopped_early"] = stopped_early;
  nlohmann::json history_json = nlohmann::json::array();
  for (const EpochStats& e : history) {
    history_json.push_back({{"epoch", e.epoch},
                            {"loss", e.loss},
                            {"val_f1", e.val_f1},
                            {"lr", e.lr}});
  }
  j["history"] = history_json;
  return j.dump(2) + "\n";
}

double cosine_lr(std::int64_t step, std::int64_t total_steps,
                 const TrainConfig& cfg) {
  if (total_steps < 1) throw ConfigError("total_steps must be >= 1");
  const double total = static_cast<double>(total_steps);
  const double s = std::clamp(static_cast<double>(step), 0.0, total);
  const double warmup = cfg.warmup_fraction * total;
  if (s < warmup) return cfg.lr_peak * (s / warmup);
  if (total - warmup <= 0.0) return cfg.lr_peak;
  const double progress = (s - warmup) / (total - warmup);
  return cfg.lr_peak * 0.5 * (1.0 + std::cos(M_PI * progress));
}

namespace {

// Class-then-instance sampling over explicit index pools.
class WeightedIndexSampler {
 public:
  WeightedIndexSampler(std::vector<std::vector<std::size_t>> pools,
                       std::vector<double> weights, std::uint64_t seed)
      : pools_(std::move(pools)), rng_(mix64(seed)) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    double acc = 0.0;
    for (double w : weights) {
      acc += w / sum;
      cumulative_.push_back(acc);
    }
    if (!cumulative_.empty()) cumulative_.back() = 1.0;
  }

  std::size_t next() {
    const double u = rng_.unit();
    std::size_t k = 0;
    while (k + 1 < cumulative_.size() && u >= cumulative_[k]) ++k;
    const auto& pool = pools_[k];
    return pool[rng_.index(pool.size())];
  }

 private:
  std::vector<std::vector<std::size_t>> pools_;
  std::vector<double> cumulative_;
  SeededRng rng_;
};

std::vector<std::vector<std::size_t>> group_by_label(
    const DatasetManifest& manifest, const std::vector<std::size_t>& indices,
    std::vector<EventLabel>* order) {
  std::map<EventLabel, std::vector<std::size_t>> groups;
  for (std::size_t i : indices) {
    const auto& label = manifest.rows[i].label;
    if (!label) throw ConfigError("train row '" + manifest.rows[i].id +
                                  "' is unlabeled");
    groups[*label].push_back(i);
  }
  std::vector<std::vector<std::size_t>> pools;
  for (auto& [label, pool] : groups) {
    if (order) order->push_back(label);
    pools.push_back(std::move(pool));
  }
  return pools;
}

bool head_needs_text(HeadKind head) { return head != HeadKind::vision_only; }
bool head_needs_vision(HeadKind head) { return head != HeadKind::text_only; }

}  // namespace

BalancedSampler::BalancedSampler(const DatasetManifest& manifest,
                                 const std::map<EventLabel, double>& weights,
                                 std::uint64_t seed)
    : manifest_(manifest), rng_(mix64(seed)) {
  const std::vector<std::size_t> train = manifest.indices_of(Split::train);
  if (train.empty()) throw ConfigError("manifest has an empty train split");

  std::vector<EventLabel> order;
  by_class_ = group_by_label(manifest, train, &order);
  double sum = 0.0;
  std::vector<double> w;
  for (EventLabel label : order) {
    auto it = weights.find(label);
    if (it == weights.end() || !(it->second > 0.0)) {
      throw ConfigError("no positive weight for class '" +
                        std::string(display_name(label)) + "'");
    }
    w.push_back(it->second);
    sum += it->second;
  }
  double acc = 0.0;
  for (double x : w) {
    acc += x / sum;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

std::size_t BalancedSampler::next_index() {
  const double u = rng_.unit();
  std::size_t k = 0;
  while (k + 1 < cumulative_.size() && u >= cumulative_[k]) ++k;
  const auto& pool = by_class_[k];
  return pool[rng_.index(pool.size())];
}

const Instance& BalancedSampler::next() {
  return manifest_.rows[next_index()];
}

TrainResult train(const FusionConfig& config, const TextEncoder* text_encoder,
                  const VisionEncoder* vision_encoder,
                  const DatasetManifest& manifest, const TrainConfig& cfg) {
  cfg.validate();
  config.validate();

  const bool needs_text = head_needs_text(config.head);
  const bool needs_vision = head_needs_vision(config.head);
  if (needs_text) {
    if (!text_encoder) throw ConfigError("head requires a text encoder");
    if (text_encoder->dim() != config.d_text)
      throw ConfigError("text encoder dim " + std::to_string(text_encoder->dim()) +
                        " != configured d_text " + std::to_string(config.d_text));
  }
  if (needs_vision) {
    if (!vision_encoder) throw ConfigError("head requires a vision encoder");
    if (vision_encoder->dim() != config.d_vision)
      throw ConfigError("vision encoder dim " +
                        std::to_string(vision_encoder->dim()) +
                        " != configured d_vision " + std::to_string(config.d_vision));
  }

  const std::vector<std::size_t> train_rows = manifest.indices_of(Split::train);
  if (train_rows.empty()) throw ConfigError("manifest has an empty train split");

  // Stratified validation carve: per class, a seeded shuffle donates its
  // tail to validation.
  SeededRng carve_rng(mix64(cfg.seed ^ 0x76616c6964ULL));
  std::vector<std::size_t> core, val;
  {
    std::vector<EventLabel> order;
    auto pools = group_by_label(manifest, train_rows, &order);
    for (auto& pool : pools) {
      carve_rng.shuffle(pool);
      std::size_t take = static_cast<std::size_t>(
          cfg.val_fraction * static_cast<double>(pool.size()));
      if (take == 0 && pool.size() >= 2) take = 1;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        (i >= pool.size() - take ? val : core).push_back(pool[i]);
      }
    }
  }
  if (core.empty()) {
    core = val;  // degenerate manifests: train and validate on the same rows
  }
  if (val.empty()) val = core;

  // Embeddings are deterministic per instance, so encode once up front.
  std::vector<std::optional<Embedding>> text_emb(manifest.rows.size());
  std::vector<std::optional<Embedding>> vision_emb(manifest.rows.size());
  auto encode_row = [&](std::size_t i) {
    const Instance& instance = manifest.rows[i];
    if (needs_text && !text_emb[i]) text_emb[i] = text_encoder->encode(instance.text);
    if (needs_vision && !vision_emb[i])
      vision_emb[i] = vision_encoder->encode_path(manifest.resolve_image(instance));
  };
  for (std::size_t i : core) encode_row(i);
  for (std::size_t i : val) encode_row(i);

  auto input_for = [&](std::size_t i) {
    FusionInput input;
    if (needs_text) input.text = *text_emb[i];
    if (needs_vision) input.vision = *vision_emb[i];
    return input;
  };

  // Batch source: balanced class-proportional draws, or seeded shuffled
  // passes when balancing is off.
  std::optional<WeightedIndexSampler> balanced;
  if (cfg.balanced_sampling) {
    std::vector<EventLabel> order;
    auto pools = group_by_label(manifest, core, &order);
    std::vector<double> weights;
    for (const auto& pool : pools) {
      weights.push_back(static_cast<double>(core.size()) /
                        static_cast<double>(pool.size()));
    }
    balanced.emplace(std::move(pools), std::move(weights), cfg.seed);
  }
  SeededRng shuffle_rng(mix64(cfg.seed ^ 0x73687566ULL));
  std::vector<std::size_t> pass = core;
  std::size_t pass_pos = pass.size();  // forces an initial shuffle
  auto next_train_index = [&]() -> std::size_t {
    if (balanced) return balanced->next();
    if (pass_pos == pass.size()) {
      shuffle_rng.shuffle(pass);
      pass_pos = 0;
    }
    return pass[pass_pos++];
  };

  const std::int64_t steps_per_epoch = static_cast<std::int64_t>(
      (core.size() + static_cast<std::size_t>(cfg.batch_size) - 1) /
      static_cast<std::size_t>(cfg.batch_size));
  const std::int64_t total_steps = steps_per_epoch * cfg.epochs_max;

  FusionParams params = init_params(config, cfg.seed);
  FusionParams best_params = params;
  TrainReport report;
  double best_f1 = -1.0;
  int epochs_since_best = 0;
  std::int64_t step = 0;

  auto validate_f1 = [&]() {
    std::vector<ScoredPair> pairs;
    pairs.reserve(val.size());
    for (std::size_t i : val) {
      const Prediction pred = forward(params, input_for(i));
      pairs.emplace_back(pred.argmax, *manifest.rows[i].label);
    }
    return score(pairs).weighted.f1;
  };

  for (int epoch = 1; epoch <= cfg.epochs_max; ++epoch) {
    double epoch_loss = 0.0;
    double last_lr = 0.0;
    for (std::int64_t s = 0; s < steps_per_epoch; ++s) {
      std::vector<std::size_t> batch(static_cast<std::size_t>(cfg.batch_size));
      for (auto& idx : batch) idx = next_train_index();

      TensorBag sum;
      double batch_loss = 0.0;
      for (std::size_t idx : batch) {
        Gradients g = gradient_of(params, input_for(idx), *manifest.rows[idx].label);
        batch_loss += g.loss;
        if (sum.size() == 0) {
          for (auto& [name, tensor] : g.tensors) {
            sum.add(name, tensor.rows, tensor.cols).a = tensor.a;
          }
        } else {
          for (auto& [name, tensor] : g.tensors) {
            Matrix& acc = sum.get(name);
            for (std::size_t i = 0; i < tensor.a.size(); ++i)
              acc.a[i] += tensor.a[i];
          }
        }
      }
      batch_loss /= cfg.batch_size;
      if (!std::isfinite(batch_loss)) {
        std::string ids;
        for (std::size_t idx : batch) {
          if (!ids.empty()) ids += ", ";
          ids += manifest.rows[idx].id;
        }
        throw NumericError("non-finite loss at step " + std::to_string(step) +
                           " (lr " + std::to_string(last_lr) + ", batch ids: " +
                           ids + ")");
      }

      last_lr = cosine_lr(step, total_steps, cfg);
      const double scale = last_lr / cfg.batch_size;
      for (auto& [name, grad] : sum) {
        Matrix& tensor = params.tensors.get(name);
        for (std::size_t i = 0; i < grad.a.size(); ++i)
          tensor.a[i] -= scale * grad.a[i];
      }
      epoch_loss += batch_loss;
      ++step;
    }

    const double val_f1 = validate_f1();
    report.history.push_back({epoch,
                              epoch_loss / static_cast<double>(steps_per_epoch),
                              val_f1, last_lr});
    report.epochs_run = epoch;

    if (val_f1 > best_f1) {
      best_f1 = val_f1;
      best_params = params;
      epochs_since_best = 0;
    } else {
      ++epochs_since_best;
      if (epochs_since_best >= cfg.patience) {
        report.stopped_early = epoch < cfg.epochs_max;
        break;
      }
    }
  }

  report.best_val_f1 = best_f1;
  return {std::move(best_params), std::move(report)};
}

}  // namespace medkit
