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
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace medkit {

/// Dense row-major matrix of doubles. Vectors are n-by-1 matrices.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  std::size_t size() const { return a.size(); }

  std::span<double> row(std::size_t r) { return {a.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {a.data() + r * cols, cols};
  }
};

using Vec = std::vector<double>;

/// y = M^T x for M of shape (in x out); x has length `in`.
Vec matvec_transposed(const Matrix& m, std::span<const double> x);

/// y = M x; x has length M.cols.
Vec matvec(const Matrix& m, std::span<const double> x);

/// C = A * B.
Matrix matmul(const Matrix& a, const Matrix& b);

/// C = A * B^T.
Matrix matmul_nt(const Matrix& a, const Matrix& b);

/// C = A^T * B.
Matrix matmul_tn(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);

/// Numerically stable softmax (max subtraction).
Vec softmax(std::span<const double> z);

/// Backward of y = softmax(x) given y and dL/dy: dx_i = y_i (dy_i - sum y.dy).
Vec softmax_backward(std::span<const double> y, std::span<const double> dy);

bool all_finite(std::span<const double> v);

/// Deterministic PRNG wrapper. All variate generation is implemented on the
/// raw mt19937_64 stream (never std::*_distribution) so that outputs are
/// bit-identical across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-bound, bound).
  double symmetric(double bound) { return (unit() * 2.0 - 1.0) * bound; }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix64(std::uint64_t x);

std::string hex64(std::uint64_t value);

}  // namespace medkit
