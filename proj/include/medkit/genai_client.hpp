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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medkit/prompt.hpp"

namespace medkit {

struct SamplingParams {
  double temperature = 0.7;
  /// Fractional top-k as reported; clients map it to the nearest endpoint
  /// parameter (top_p on nucleus-only endpoints).
  double nucleus_or_topk = 0.8;
  int max_output_tokens = 64;
};

struct TransportRequest {
  std::string prompt;
  std::vector<std::string> attachment_refs;
  SamplingParams params;
};

enum class TransportStatus { ok, transport_error, rate_limited };

struct TransportResponse {
  TransportStatus status = TransportStatus::transport_error;
  std::string text;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResponse send(const TransportRequest& request) = 0;
};

/// Scripted offline transport. The fixture is JSONL, consumed in order:
///   {"response": "..."}      one successful reply
///   {"fail": "transport"}    one transport failure
///   {"fail": "rate_limit"}   one rate-limit signal
/// Thread safe; never touches the attachment bytes or the network.
class MockTransport : public Transport {
 public:
  explicit MockTransport(const std::filesystem::path& fixture_path);
  explicit MockTransport(std::vector<std::string> fixture_lines);

  TransportResponse send(const TransportRequest& request) override;

  std::size_t consumed() const;
  std::vector<TransportRequest> requests() const;

 private:
  mutable std::mutex mutex_;
  std::vector<TransportResponse> script_;
  std::vector<TransportRequest> requests_;
  std::size_t next_ = 0;
};

using AttachmentLoader =
    std::function<std::vector<std::uint8_t>(const std::string& ref)>;

AttachmentLoader file_attachment_loader(const std::filesystem::path& base_dir);

/// Chat-completion style request body; attachments ride inline as base64
/// data URLs. Pure and endpoint-independent, so the wire shape is testable
/// without a server.
std::string build_request_body(
    const std::string& prompt,
    std::span<const std::vector<std::uint8_t>> attachments,
    const SamplingParams& params, const std::string& model);

std::string base64_encode(std::span<const std::uint8_t> bytes);

/// Live HTTP transport (POST {base_url}/v1/chat/completions, bearer auth).
class HttpTransport : public Transport {
 public:
  HttpTransport(std::string base_url, std::string api_key, std::string model,
                AttachmentLoader loader);

  TransportResponse send(const TransportRequest& request) override;

 private:
  std::string base_url_;
  std::string api_key_;
  std::string model_;
  AttachmentLoader loader_;
};

struct RetryPolicy {
  int max_attempts = 4;
  int base_backoff_ms = 100;  // doubled per retry, capped below
  int max_backoff_ms = 2000;
};

/// Simple token bucket; acquire() blocks until a token is available.
class TokenBucket {
 public:
  TokenBucket(double rate_per_sec, double capacity);
  void acquire();

 private:
  std::mutex mutex_;
  double tokens_;
  double rate_;
  double capacity_;
  std::chrono::steady_clock::time_point last_;
};

struct GenOutcome {
  std::string raw;
  int attempts = 1;
};

/// Retrying client over a Transport. Every delivered or abandoned request
/// is appended to the JSONL audit log (prompt hash, params, attempts,
/// response, timestamp). Thread safe; generate_batch keeps at most
/// max_in_flight requests outstanding.
class GenClient {
 public:
  GenClient(Transport& transport, RetryPolicy policy,
            std::filesystem::path audit_log_path = {},
            std::shared_ptr<TokenBucket> rate_limiter = nullptr,
            int max_in_flight = 4);

  /// Throws DeliveryError once retries are exhausted.
  GenOutcome generate(const PromptBundle& bundle, const SamplingParams& params);

  struct BatchResult {
    std::optional<GenOutcome> outcome;
    std::string error;  // nonempty when delivery failed
  };

  /// Results are positionally aligned with the input bundles.
  std::vector<BatchResult> generate_batch(std::span<const PromptBundle> bundles,
                                          const SamplingParams& params);

  int max_in_flight() const { return max_in_flight_; }

 private:
  void audit(const PromptBundle& bundle, const SamplingParams& params,
             int attempts, bool delivered, const std::string& response);

  Transport& transport_;
  RetryPolicy policy_;
  std::filesystem::path audit_log_path_;
  std::shared_ptr<TokenBucket> rate_limiter_;
  int max_in_flight_;
  std::mutex audit_mutex_;
};

}  // namespace medkit
