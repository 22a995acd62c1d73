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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medkit/encoder.hpp"
#include "medkit/label.hpp"
#include "medkit/linalg.hpp"

namespace medkit {

/// The classifier heads. Text and vision heads are linear maps on a single
/// embedding; the remaining heads fuse both modalities.
enum class HeadKind {
  text_only,
  vision_only,
  vanilla_fusion,
  projected_cross_attention,  // ReLU projections + chunked cross-attention
  dual_attention,             // bidirectional attention over embedding chunks
  cmac,                       // cross-modal attention classifier
};

std::string_view head_name(HeadKind head);
HeadKind parse_head(std::string_view name);
std::vector<std::string> head_names();

/// Dimensions shared by the heads. `chunks` is the number of attention
/// positions each embedding is reshaped into; 1 recovers the degenerate
/// single-vector case.
struct FusionConfig {
  HeadKind head = HeadKind::vanilla_fusion;
  std::size_t d_text = 64;    // text embedding dim
  std::size_t d_vision = 64;  // vision embedding dim
  std::size_t d_model = 64;   // shared projection dim (projected head)
  std::size_t d_attn = 16;    // attention width for dual attention / cmac
  std::size_t chunks = 4;

  /// Throws ConfigError on non-positive dims or when a chunked head's
  /// input dims are not divisible by `chunks`.
  void validate() const;
};

/// Ordered, named parameter (or gradient) tensors.
class TensorBag {
 public:
  Matrix& add(std::string name, std::size_t rows, std::size_t cols);
  Matrix& get(std::string_view name);
  const Matrix& get(std::string_view name) const;
  bool has(std::string_view name) const;

  auto begin() { return items_.begin(); }
  auto end() { return items_.end(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<std::pair<std::string, Matrix>> items_;
};

struct FusionParams {
  FusionConfig config;
  std::uint64_t seed = 0;
  TensorBag tensors;
};

/// Seeded Glorot-uniform weights (bounds sqrt(6/(fan_in+fan_out))), zero
/// biases. Tensor names and shapes are fixed per head.
FusionParams init_params(const FusionConfig& config, std::uint64_t seed);

/// Probability distribution over the taxonomy plus its argmax; argmax ties
/// break toward the lowest label index.
struct Prediction {
  std::array<double, kNumLabels> probs{};
  EventLabel argmax = EventLabel::NonDamage;
};

/// Optional forward diagnostics: every attention distribution computed
/// during the pass, one entry per query position.
struct ForwardTrace {
  std::vector<Vec> attention_rows;
};

struct FusionInput {
  std::optional<Embedding> text;
  std::optional<Embedding> vision;
};

/// Head-dispatching forward pass. Throws ShapeError on dim/modality
/// mismatch (message names expected vs actual).
Prediction forward(const FusionParams& params, const FusionInput& input,
                   ForwardTrace* trace = nullptr);

// Per-head entry points.
Prediction text_head(const FusionParams& params, const Embedding& text);
Prediction vision_head(const FusionParams& params, const Embedding& vision);
Prediction vanilla_fusion(const FusionParams& params, const Embedding& vision,
                          const Embedding& text);
Prediction projected_cross_attention_fusion(const FusionParams& params,
                                            const Embedding& vision,
                                            const Embedding& text,
                                            ForwardTrace* trace = nullptr);
Prediction dual_attention_fusion(const FusionParams& params,
                                 const Embedding& vision, const Embedding& text,
                                 ForwardTrace* trace = nullptr);
Prediction cmac(const FusionParams& params, const Embedding& vision,
                const Embedding& text, ForwardTrace* trace = nullptr);

/// Cross-entropy loss and exact analytic gradients for every parameter
/// tensor, mirroring the parameter names and shapes. Throws NumericError
/// when the loss is non-finite.
struct Gradients {
  double loss = 0.0;
  TensorBag tensors;
  Prediction prediction;
};

Gradients gradient_of(const FusionParams& params, const FusionInput& input,
                      EventLabel target);

/// loss = -log p[target].
double cross_entropy(const Prediction& prediction, EventLabel target);

}  // namespace medkit
