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

#include "medkit/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "medkit/error.hpp"

namespace medkit {

namespace {

constexpr std::size_t kC = kNumLabels;

void check_embedding(const Embedding& e, std::size_t expected_dim,
                     Modality expected_modality, const char* what) {
  if (e.modality != expected_modality) {
    throw ShapeError(std::string(what) + ": expected " +
                     std::string(modality_name(expected_modality)) +
                     " modality, got " + std::string(modality_name(e.modality)));
  }
  if (e.dim() != expected_dim) {
    throw ShapeError(std::string(what) + ": expected dim " +
                     std::to_string(expected_dim) + ", got " +
                     std::to_string(e.dim()));
  }
}

// Reshape a length-(n*chunks) vector into (chunks x n) attention positions.
Matrix chunk(std::span<const double> v, std::size_t chunks) {
  const std::size_t width = v.size() / chunks;
  Matrix m(chunks, width);
  std::copy(v.begin(), v.end(), m.a.begin());
  return m;
}

Vec flatten(const Matrix& m) { return m.a; }

// Row-wise softmax; optionally records each row in the trace.
Matrix row_softmax(const Matrix& scores, ForwardTrace* trace) {
  Matrix out(scores.rows, scores.cols);
  for (std::size_t r = 0; r < scores.rows; ++r) {
    Vec row = softmax(scores.row(r));
    if (trace) trace->attention_rows.push_back(row);
    std::copy(row.begin(), row.end(), out.row(r).begin());
  }
  return out;
}

Prediction prediction_from_logits(std::span<const double> logits) {
  Prediction p;
  const Vec probs = softmax(logits);
  std::copy(probs.begin(), probs.end(), p.probs.begin());
  std::size_t best = 0;
  for (std::size_t i = 1; i < kC; ++i) {
    if (p.probs[i] > p.probs[best]) best = i;
  }
  p.argmax = static_cast<EventLabel>(static_cast<int>(best));
  return p;
}

Vec relu(std::span<const double> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0.0 ? v[i] : 0.0;
  return out;
}

Vec loss_grad(const Prediction& prediction, EventLabel target) {
  Vec g(prediction.probs.begin(), prediction.probs.end());
  g[static_cast<std::size_t>(label_index(target))] -= 1.0;
  return g;
}

// dW = x g^T for a classifier tensor of shape (len(x) x len(g)).
Matrix outer(std::span<const double> x, std::span<const double> g) {
  Matrix m(x.size(), g.size());
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < g.size(); ++c) m.at(r, c) = x[r] * g[c];
  }
  return m;
}

Matrix column(std::span<const double> v) {
  Matrix m(v.size(), 1);
  std::copy(v.begin(), v.end(), m.a.begin());
  return m;
}

void scale_in_place(Matrix& m, double s) {
  for (double& v : m.a) v *= s;
}

// ---------------------------------------------------------------------------
// Per-head forward traces. Each trace keeps exactly the intermediates the
// analytic backward pass needs.

struct LinearTrace {
  Vec input;
  Prediction prediction;
};

LinearTrace linear_trace(const Matrix& w, const Matrix& b, Vec input) {
  Vec logits = matvec_transposed(w, input);
  for (std::size_t c = 0; c < kC; ++c) logits[c] += b.a[c];
  return {std::move(input), prediction_from_logits(logits)};
}

struct ProjectedTrace {
  Vec text_in, vision_in;
  Vec wp, vp;       // pre-activation projections
  Vec wa, va;       // ReLU outputs (W', V')
  Matrix q, k;      // W'-chunks / V'-chunks
  Matrix attn;      // row-softmax of qk^T / sqrt(chunk width)
  Vec fused;        // flatten(attn * V'-chunks)
  Prediction prediction;
};

ProjectedTrace projected_trace(const FusionParams& params, const Embedding& vision,
                               const Embedding& text, ForwardTrace* trace) {
  const FusionConfig& cfg = params.config;
  ProjectedTrace t;
  t.text_in = text.values;
  t.vision_in = vision.values;
  t.wp = matvec_transposed(params.tensors.get("w_text"), t.text_in);
  t.vp = matvec_transposed(params.tensors.get("w_img"), t.vision_in);
  t.wa = relu(t.wp);
  t.va = relu(t.vp);
  t.q = chunk(t.wa, cfg.chunks);
  t.k = chunk(t.va, cfg.chunks);
  Matrix scores = matmul_nt(t.q, t.k);
  scale_in_place(scores, 1.0 / std::sqrt(static_cast<double>(t.q.cols)));
  t.attn = row_softmax(scores, trace);
  t.fused = flatten(matmul(t.attn, t.k));
  Vec logits = matvec_transposed(params.tensors.get("w_f"), t.fused);
  for (std::size_t c = 0; c < kC; ++c) logits[c] += params.tensors.get("b_f").a[c];
  t.prediction = prediction_from_logits(logits);
  return t;
}

struct DualTrace {
  Matrix xt, xi;              // embedding chunks
  Matrix qt, kt, vt;          // text projections
  Matrix qi, ki, vi;          // image projections
  Matrix a1, a2;              // attention maps
  Matrix i_att, t_att;
  Vec fused;
  Prediction prediction;
};

DualTrace dual_trace(const FusionParams& params, const Embedding& vision,
                     const Embedding& text, ForwardTrace* trace) {
  const FusionConfig& cfg = params.config;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(cfg.d_attn));
  DualTrace t;
  t.xt = chunk(text.values, cfg.chunks);
  t.xi = chunk(vision.values, cfg.chunks);
  t.qt = matmul(t.xt, params.tensors.get("wq_t"));
  t.kt = matmul(t.xt, params.tensors.get("wk_t"));
  t.vt = matmul(t.xt, params.tensors.get("wv_t"));
  t.qi = matmul(t.xi, params.tensors.get("wq_i"));
  t.ki = matmul(t.xi, params.tensors.get("wk_i"));
  t.vi = matmul(t.xi, params.tensors.get("wv_i"));

  Matrix s1 = matmul_nt(t.qt, t.ki);
  scale_in_place(s1, inv_sqrt);
  t.a1 = row_softmax(s1, trace);
  t.i_att = matmul(t.a1, t.vi);

  Matrix s2 = matmul_nt(t.qi, t.kt);
  scale_in_place(s2, inv_sqrt);
  t.a2 = row_softmax(s2, trace);
  t.t_att = matmul(t.a2, t.vt);

  t.fused = flatten(t.i_att);
  const Vec tail = flatten(t.t_att);
  t.fused.insert(t.fused.end(), tail.begin(), tail.end());
  Vec logits = matvec_transposed(params.tensors.get("w_f"), t.fused);
  for (std::size_t c = 0; c < kC; ++c) logits[c] += params.tensors.get("b_f").a[c];
  t.prediction = prediction_from_logits(logits);
  return t;
}

struct CmacTrace {
  Matrix wch, vch;  // embedding chunks
  Matrix qm, km;    // projected chunks
  Vec alpha;        // attention over chunk positions
  Vec vprime, wprime;
  Vec fused;        // [V'; W']
  Prediction prediction;
};

CmacTrace cmac_trace(const FusionParams& params, const Embedding& vision,
                     const Embedding& text, ForwardTrace* trace) {
  const FusionConfig& cfg = params.config;
  CmacTrace t;
  t.wch = chunk(text.values, cfg.chunks);
  t.vch = chunk(vision.values, cfg.chunks);
  t.qm = matmul(t.wch, params.tensors.get("q_proj"));
  t.km = matmul(t.vch, params.tensors.get("k_proj"));

  Vec scores(cfg.chunks);
  for (std::size_t j = 0; j < cfg.chunks; ++j) {
    scores[j] = dot(t.qm.row(j), t.km.row(j));
  }
  t.alpha = softmax(scores);
  if (trace) trace->attention_rows.push_back(t.alpha);

  t.vprime.assign(t.vch.cols, 0.0);
  t.wprime.assign(t.wch.cols, 0.0);
  for (std::size_t j = 0; j < cfg.chunks; ++j) {
    const double a = t.alpha[j];
    for (std::size_t c = 0; c < t.vch.cols; ++c) t.vprime[c] += a * t.vch.at(j, c);
    for (std::size_t c = 0; c < t.wch.cols; ++c) t.wprime[c] += a * t.wch.at(j, c);
  }
  t.fused = t.vprime;
  t.fused.insert(t.fused.end(), t.wprime.begin(), t.wprime.end());
  Vec logits = matvec_transposed(params.tensors.get("w_c"), t.fused);
  for (std::size_t c = 0; c < kC; ++c) logits[c] += params.tensors.get("b_c").a[c];
  t.prediction = prediction_from_logits(logits);
  return t;
}

const Embedding& require_text(const FusionInput& input) {
  if (!input.text) throw ShapeError("head requires a text embedding");
  return *input.text;
}

const Embedding& require_vision(const FusionInput& input) {
  if (!input.vision) throw ShapeError("head requires a vision embedding");
  return *input.vision;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view head_name(HeadKind head) {
  switch (head) {
    case HeadKind::text_only:
      return "text";
    case HeadKind::vision_only:
      return "vision";
    case HeadKind::vanilla_fusion:
      return "vanilla";
    case HeadKind::projected_cross_attention:
      return "projected";
    case HeadKind::dual_attention:
      return "dual";
    case HeadKind::cmac:
      return "cmac";
  }
  return "";
}

std::vector<std::string> head_names() {
  return {"text", "vision", "vanilla", "projected", "dual", "cmac"};
}

HeadKind parse_head(std::string_view name) {
  if (name == "text" || name == "text_only") return HeadKind::text_only;
  if (name == "vision" || name == "vision_only") return HeadKind::vision_only;
  if (name == "vanilla" || name == "vanilla_fusion") return HeadKind::vanilla_fusion;
  if (name == "projected" || name == "projected_cross_attention")
    return HeadKind::projected_cross_attention;
  if (name == "dual" || name == "dual_attention") return HeadKind::dual_attention;
  if (name == "cmac") return HeadKind::cmac;
  std::string valid;
  for (const auto& n : head_names()) valid += valid.empty() ? n : ", " + n;
  throw ConfigError("unknown head '" + std::string(name) + "' (valid: " + valid +
                    ")");
}

void FusionConfig::validate() const {
  if (d_text == 0 || d_vision == 0 || d_model == 0 || d_attn == 0 || chunks == 0)
    throw ConfigError("fusion dims must be positive");
  switch (head) {
    case HeadKind::projected_cross_attention:
      if (d_model % chunks != 0)
        throw ConfigError("d_model " + std::to_string(d_model) +
                          " is not divisible by chunks " + std::to_string(chunks));
      break;
    case HeadKind::dual_attention:
    case HeadKind::cmac:
      if (d_text % chunks != 0 || d_vision % chunks != 0)
        throw ConfigError("embedding dims (" + std::to_string(d_text) + ", " +
                          std::to_string(d_vision) +
                          ") are not divisible by chunks " +
                          std::to_string(chunks));
      break;
    default:
      break;
  }
}

Matrix& TensorBag::add(std::string name, std::size_t rows, std::size_t cols) {
  items_.emplace_back(std::move(name), Matrix(rows, cols));
  return items_.back().second;
}

Matrix& TensorBag::get(std::string_view name) {
  for (auto& [n, m] : items_) {
    if (n == name) return m;
  }
  throw ConfigError("no tensor named '" + std::string(name) + "'");
}

const Matrix& TensorBag::get(std::string_view name) const {
  for (const auto& [n, m] : items_) {
    if (n == name) return m;
  }
  throw ConfigError("no tensor named '" + std::string(name) + "'");
}

bool TensorBag::has(std::string_view name) const {
  for (const auto& [n, m] : items_) {
    if (n == name) return true;
  }
  return false;
}

namespace {

// Declares the tensor names and shapes for a head. Used by init and by the
// checkpoint reader to validate archives.
void declare_tensors(const FusionConfig& cfg, TensorBag& bag) {
  switch (cfg.head) {
    case HeadKind::text_only:
      bag.add("w_t", cfg.d_text, kC);
      bag.add("b_t", kC, 1);
      break;
    case HeadKind::vision_only:
      bag.add("w_v", cfg.d_vision, kC);
      bag.add("b_v", kC, 1);
      break;
    case HeadKind::vanilla_fusion:
      bag.add("w_f", cfg.d_vision + cfg.d_text, kC);
      bag.add("b_f", kC, 1);
      break;
    case HeadKind::projected_cross_attention:
      bag.add("w_text", cfg.d_text, cfg.d_model);
      bag.add("w_img", cfg.d_vision, cfg.d_model);
      bag.add("w_f", cfg.d_model, kC);
      bag.add("b_f", kC, 1);
      break;
    case HeadKind::dual_attention: {
      const std::size_t ct = cfg.d_text / cfg.chunks;
      const std::size_t ci = cfg.d_vision / cfg.chunks;
      bag.add("wq_t", ct, cfg.d_attn);
      bag.add("wk_t", ct, cfg.d_attn);
      bag.add("wv_t", ct, cfg.d_attn);
      bag.add("wq_i", ci, cfg.d_attn);
      bag.add("wk_i", ci, cfg.d_attn);
      bag.add("wv_i", ci, cfg.d_attn);
      bag.add("w_f", 2 * cfg.chunks * cfg.d_attn, kC);
      bag.add("b_f", kC, 1);
      break;
    }
    case HeadKind::cmac: {
      bag.add("q_proj", cfg.d_text / cfg.chunks, cfg.d_attn);
      bag.add("k_proj", cfg.d_vision / cfg.chunks, cfg.d_attn);
      bag.add("w_c", (cfg.d_vision + cfg.d_text) / cfg.chunks, kC);
      bag.add("b_c", kC, 1);
      break;
    }
  }
}

bool is_bias(std::string_view name) { return name.starts_with("b_"); }

}  // namespace

FusionParams init_params(const FusionConfig& config, std::uint64_t seed) {
  config.validate();
  FusionParams params;
  params.config = config;
  params.seed = seed;
  declare_tensors(config, params.tensors);
  SeededRng rng(mix64(seed));
  for (auto& [name, tensor] : params.tensors) {
    if (is_bias(name)) continue;
    const double bound = std::sqrt(
        6.0 / static_cast<double>(tensor.rows + tensor.cols));
    for (double& v : tensor.a) v = rng.symmetric(bound);
  }
  return params;
}

Prediction text_head(const FusionParams& params, const Embedding& text) {
  check_embedding(text, params.config.d_text, Modality::text, "text embedding");
  return linear_trace(params.tensors.get("w_t"), params.tensors.get("b_t"),
                      text.values)
      .prediction;
}

Prediction vision_head(const FusionParams& params, const Embedding& vision) {
  check_embedding(vision, params.config.d_vision, Modality::vision,
                  "vision embedding");
  return linear_trace(params.tensors.get("w_v"), params.tensors.get("b_v"),
                      vision.values)
      .prediction;
}

Prediction vanilla_fusion(const FusionParams& params, const Embedding& vision,
                          const Embedding& text) {
  check_embedding(vision, params.config.d_vision, Modality::vision,
                  "vision embedding");
  check_embedding(text, params.config.d_text, Modality::text, "text embedding");
  Vec joint = vision.values;
  joint.insert(joint.end(), text.values.begin(), text.values.end());
  return linear_trace(params.tensors.get("w_f"), params.tensors.get("b_f"),
                      std::move(joint))
      .prediction;
}

Prediction projected_cross_attention_fusion(const FusionParams& params,
                                            const Embedding& vision,
                                            const Embedding& text,
                                            ForwardTrace* trace) {
  check_embedding(vision, params.config.d_vision, Modality::vision,
                  "vision embedding");
  check_embedding(text, params.config.d_text, Modality::text, "text embedding");
  return projected_trace(params, vision, text, trace).prediction;
}

Prediction dual_attention_fusion(const FusionParams& params,
                                 const Embedding& vision, const Embedding& text,
                                 ForwardTrace* trace) {
  check_embedding(vision, params.config.d_vision, Modality::vision,
                  "vision embedding");
  check_embedding(text, params.config.d_text, Modality::text, "text embedding");
  return dual_trace(params, vision, text, trace).prediction;
}

Prediction cmac(const FusionParams& params, const Embedding& vision,
                const Embedding& text, ForwardTrace* trace) {
  check_embedding(vision, params.config.d_vision, Modality::vision,
                  "vision embedding");
  check_embedding(text, params.config.d_text, Modality::text, "text embedding");
  return cmac_trace(params, vision, text, trace).prediction;
}

Prediction forward(const FusionParams& params, const FusionInput& input,
                   ForwardTrace* trace) {
  switch (params.config.head) {
    case HeadKind::text_only:
      return text_head(params, require_text(input));
    case HeadKind::vision_only:
      return vision_head(params, require_vision(input));
    case HeadKind::vanilla_fusion:
      return vanilla_fusion(params, require_vision(input), require_text(input));
    case HeadKind::projected_cross_attention:
      return projected_cross_attention_fusion(params, require_vision(input),
                                              require_text(input), trace);
    case HeadKind::dual_attention:
      return dual_attention_fusion(params, require_vision(input),
                                   require_text(input), trace);
    case HeadKind::cmac:
      return cmac(params, require_vision(input), require_text(input), trace);
  }
  throw ConfigError("unknown head kind");
}

double cross_entropy(const Prediction& prediction, EventLabel target) {
  return -std::log(prediction.probs[static_cast<std::size_t>(label_index(target))]);
}

namespace {

Gradients linear_gradients(const char* w_name, const char* b_name,
                           const LinearTrace& t, EventLabel target) {
  Gradients grads;
  grads.prediction = t.prediction;
  grads.loss = cross_entropy(t.prediction, target);
  const Vec g = loss_grad(t.prediction, target);
  grads.tensors.add(w_name, 0, 0) = outer(t.input, g);
  grads.tensors.add(b_name, 0, 0) = column(g);
  return grads;
}

Gradients projected_gradients(const FusionParams& params, const FusionInput& input,
                              EventLabel target) {
  const ProjectedTrace t =
      projected_trace(params, require_vision(input), require_text(input), nullptr);
  Gradients grads;
  grads.prediction = t.prediction;
  grads.loss = cross_entropy(t.prediction, target);
  const Vec g = loss_grad(t.prediction, target);

  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(t.q.cols));
  const Vec d_fused = matvec(params.tensors.get("w_f"), g);
  Matrix d_out(t.attn.rows, t.k.cols);
  d_out.a = d_fused;

  Matrix d_attn = matmul_nt(d_out, t.k);
  Matrix d_values = matmul_tn(t.attn, d_out);
  Matrix d_scores(t.attn.rows, t.attn.cols);
  for (std::size_t r = 0; r < t.attn.rows; ++r) {
    const Vec ds = softmax_backward(t.attn.row(r), d_attn.row(r));
    std::copy(ds.begin(), ds.end(), d_scores.row(r).begin());
  }
  Matrix d_q = matmul(d_scores, t.k);
  scale_in_place(d_q, inv_sqrt);
  Matrix d_k = matmul_tn(d_scores, t.q);
  scale_in_place(d_k, inv_sqrt);

  // V'-chunks serve as both keys and values.
  Vec d_wa = flatten(d_q);
  Vec d_va = flatten(d_k);
  const Vec d_values_flat = flatten(d_values);
  for (std::size_t i = 0; i < d_va.size(); ++i) d_va[i] += d_values_flat[i];

  Vec d_wp(d_wa.size()), d_vp(d_va.size());
  for (std::size_t i = 0; i < d_wa.size(); ++i)
    d_wp[i] = t.wp[i] > 0.0 ? d_wa[i] : 0.0;
  for (std::size_t i = 0; i < d_va.size(); ++i)
    d_vp[i] = t.vp[i] > 0.0 ? d_va[i] : 0.0;

  grads.tensors.add("w_text", 0, 0) = outer(t.text_in, d_wp);
  grads.tensors.add("w_img", 0, 0) = outer(t.vision_in, d_vp);
  grads.tensors.add("w_f", 0, 0) = outer(t.fused, g);
  grads.tensors.add("b_f", 0, 0) = column(g);
  return grads;
}

Gradients dual_gradients(const FusionParams& params, const FusionInput& input,
                         EventLabel target) {
  const FusionConfig& cfg = params.config;
  const DualTrace t =
      dual_trace(params, require_vision(input), require_text(input), nullptr);
  Gradients grads;
  grads.prediction = t.prediction;
  grads.loss = cross_entropy(t.prediction, target);
  const Vec g = loss_grad(t.prediction, target);

  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(cfg.d_attn));
  const Vec d_fused = matvec(params.tensors.get("w_f"), g);
  const std::size_t half = cfg.chunks * cfg.d_attn;
  Matrix d_i(cfg.chunks, cfg.d_attn), d_t(cfg.chunks, cfg.d_attn);
  std::copy(d_fused.begin(), d_fused.begin() + static_cast<std::ptrdiff_t>(half),
            d_i.a.begin());
  std::copy(d_fused.begin() + static_cast<std::ptrdiff_t>(half), d_fused.end(),
            d_t.a.begin());

  auto attention_backward = [&](const Matrix& a, const Matrix& q, const Matrix& k,
                                const Matrix& v, const Matrix& d_out, Matrix& d_q,
                                Matrix& d_k, Matrix& d_v) {
    Matrix d_a = matmul_nt(d_out, v);
    d_v = matmul_tn(a, d_out);
    Matrix d_s(a.rows, a.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
      const Vec ds = softmax_backward(a.row(r), d_a.row(r));
      std::copy(ds.begin(), ds.end(), d_s.row(r).begin());
    }
    d_q = matmul(d_s, k);
    scale_in_place(d_q, inv_sqrt);
    d_k = matmul_tn(d_s, q);
    scale_in_place(d_k, inv_sqrt);
  };

  Matrix d_qt, d_ki, d_vi;
  attention_backward(t.a1, t.qt, t.ki, t.vi, d_i, d_qt, d_ki, d_vi);
  Matrix d_qi, d_kt, d_vt;
  attention_backward(t.a2, t.qi, t.kt, t.vt, d_t, d_qi, d_kt, d_vt);

  grads.tensors.add("wq_t", 0, 0) = matmul_tn(t.xt, d_qt);
  grads.tensors.add("wk_t", 0, 0) = matmul_tn(t.xt, d_kt);
  grads.tensors.add("wv_t", 0, 0) = matmul_tn(t.xt, d_vt);
  grads.tensors.add("wq_i", 0, 0) = matmul_tn(t.xi, d_qi);
  grads.tensors.add("wk_i", 0, 0) = matmul_tn(t.xi, d_ki);
  grads.tensors.add("wv_i", 0, 0) = matmul_tn(t.xi, d_vi);
  grads.tensors.add("w_f", 0, 0) = outer(t.fused, g);
  grads.tensors.add("b_f", 0, 0) = column(g);
  return grads;
}

Gradients cmac_gradients(const FusionParams& params, const FusionInput& input,
                         EventLabel target) {
  const FusionConfig& cfg = params.config;
  const CmacTrace t =
      cmac_trace(params, require_vision(input), require_text(input), nullptr);
  Gradients grads;
  grads.prediction = t.prediction;
  grads.loss = cross_entropy(t.prediction, target);
  const Vec g = loss_grad(t.prediction, target);

  const Vec d_fused = matvec(params.tensors.get("w_c"), g);
  const std::span<const double> d_vprime(d_fused.data(), t.vch.cols);
  const std::span<const double> d_wprime(d_fused.data() + t.vch.cols, t.wch.cols);

  Vec d_alpha(cfg.chunks, 0.0);
  for (std::size_t j = 0; j < cfg.chunks; ++j) {
    d_alpha[j] = dot(d_vprime, t.vch.row(j)) + dot(d_wprime, t.wch.row(j));
  }
  const Vec d_scores = softmax_backward(t.alpha, d_alpha);

  Matrix d_qm(cfg.chunks, cfg.d_attn), d_km(cfg.chunks, cfg.d_attn);
  for (std::size_t j = 0; j < cfg.chunks; ++j) {
    for (std::size_t c = 0; c < cfg.d_attn; ++c) {
      d_qm.at(j, c) = d_scores[j] * t.km.at(j, c);
      d_km.at(j, c) = d_scores[j] * t.qm.at(j, c);
    }
  }

  grads.tensors.add("q_proj", 0, 0) = matmul_tn(t.wch, d_qm);
  grads.tensors.add("k_proj", 0, 0) = matmul_tn(t.vch, d_km);
  grads.tensors.add("w_c", 0, 0) = outer(t.fused, g);
  grads.tensors.add("b_c", 0, 0) = column(g);
  return grads;
}

}  // namespace

Gradients gradient_of(const FusionParams& params, const FusionInput& input,
                      EventLabel target) {
  Gradients grads;
  switch (params.config.head) {
    case HeadKind::text_only: {
      const Embedding& text = require_text(input);
      check_embedding(text, params.config.d_text, Modality::text,
                      "text embedding");
      grads = linear_gradients(
          "w_t", "b_t",
          linear_trace(params.tensors.get("w_t"), params.tensors.get("b_t"),
                       text.values),
          target);
      break;
    }
    case HeadKind::vision_only: {
      const Embedding& vision = require_vision(input);
      check_embedding(vision, params.config.d_vision, Modality::vision,
                      "vision embedding");
      grads = linear_gradients(
          "w_v", "b_v",
          linear_trace(params.tensors.get("w_v"), params.tensors.get("b_v"),
                       vision.values),
          target);
      break;
    }
    case HeadKind::vanilla_fusion: {
      const Embedding& vision = require_vision(input);
      const Embedding& text = require_text(input);
      check_embedding(vision, params.config.d_vision, Modality::vision,
                      "vision embedding");
      check_embedding(text, params.config.d_text, Modality::text,
                      "text embedding");
      Vec joint = vision.values;
      joint.insert(joint.end(), text.values.begin(), text.values.end());
      grads = linear_gradients(
          "w_f", "b_f",
          linear_trace(params.tensors.get("w_f"), params.tensors.get("b_f"),
                       std::move(joint)),
          target);
      break;
    }
    case HeadKind::projected_cross_attention:
    case HeadKind::dual_attention:
    case HeadKind::cmac: {
      check_embedding(require_vision(input), params.config.d_vision,
                      Modality::vision, "vision embedding");
      check_embedding(require_text(input), params.config.d_text, Modality::text,
                      "text embedding");
      if (params.config.head == HeadKind::projected_cross_attention)
        grads = projected_gradients(params, input, target);
      else if (params.config.head == HeadKind::dual_attention)
        grads = dual_gradients(params, input, target);
      else
        grads = cmac_gradients(params, input, target);
      break;
    }
  }
  if (!std::isfinite(grads.loss)) {
    throw NumericError("non-finite loss for target '" +
                       std::string(display_name(target)) + "'");
  }
  return grads;
}

}  // namespace medkit
