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
#include <stdexcept>
#include <string>

namespace medkit {

/// Base class for all medkit failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file structure (CSV header, checkpoint magic, fixture syntax).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A single data row failed to parse; carries the 1-based row number
/// (header counts as row 1).
class RowError : public Error {
 public:
  RowError(const std::string& message, std::size_t row)
      : Error("row " + std::to_string(row) + ": " + message), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// Cross-row consistency violation (duplicate instance id).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration (dims, missing class, bad option).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Tensor/embedding dimension mismatch; message names expected vs actual.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value where a finite one is required (diverged loss).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation contract (wrong exemplar count, empty input).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or undecodable external input (missing image file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Encoder backend failed to load or cannot serve a request.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// A generative request could not be delivered after all retries.
class DeliveryError : public Error {
 public:
  DeliveryError(const std::string& message, int attempts)
      : Error(message + " (attempts: " + std::to_string(attempts) + ")"),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace medkit
