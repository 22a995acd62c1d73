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

#include "medkit/evaluation.hpp"

#include <cstdio>

#include "medkit/csv.hpp"
#include "medkit/error.hpp"

namespace medkit {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

MetricsReport score(std::span<const ScoredPair> pairs) {
  if (pairs.empty()) throw ContractError("score: empty prediction list");

  MetricsReport report;
  report.total = pairs.size();
  std::array<std::int64_t, kNumLabels> tp{}, fp{}, support{};

  for (const auto& [predicted, gold] : pairs) {
    const auto g = static_cast<std::size_t>(label_index(gold));
    support[g] += 1;
    if (!predicted) {
      report.abstained[g] += 1;
      continue;
    }
    const auto p = static_cast<std::size_t>(label_index(*predicted));
    report.confusion[g][p] += 1;
    if (p == g) tp[g] += 1;
    else fp[p] += 1;
  }

  std::int64_t total_tp = 0;
  double macro_p = 0.0, macro_r = 0.0, macro_f = 0.0;
  double weighted_p = 0.0, weighted_f = 0.0;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    ClassMetrics& m = report.per_class[c];
    m.support = static_cast<std::size_t>(support[c]);
    m.precision = safe_div(static_cast<double>(tp[c]),
                           static_cast<double>(tp[c] + fp[c]));
    m.recall = safe_div(static_cast<double>(tp[c]), static_cast<double>(support[c]));
    m.f1 = safe_div(2.0 * m.precision * m.recall, m.precision + m.recall);
    total_tp += tp[c];
    macro_p += m.precision;
    macro_r += m.recall;
    macro_f += m.f1;
    const double w = static_cast<double>(support[c]) /
                     static_cast<double>(report.total);
    weighted_p += w * m.precision;
    weighted_f += w * m.f1;
  }

  report.macro = {macro_p / kNumLabels, macro_r / kNumLabels, macro_f / kNumLabels};
  report.accuracy =
      static_cast<double>(total_tp) / static_cast<double>(report.total);
  // Weighted recall is accuracy by identity; computing it as such keeps the
  // equality exact rather than within rounding.
  report.weighted = {weighted_p, report.accuracy, weighted_f};
  return report;
}

std::string emit_report(std::span<const NamedReport> reports, ReportFormat format,
                        Averaging averaging) {
  if (reports.empty()) throw ContractError("emit_report: no reports");

  auto display = [](const std::string& name) {
    return name.empty() ? std::string("(unnamed)") : name;
  };
  auto section_title = [](ModelSection section) {
    return section == ModelSection::supervised ? "Supervised Approaches"
                                               : "Generative Approaches";
  };

  std::string out;
  if (format == ReportFormat::csv) {
    out += "section,model,precision,recall,f1\n";
    for (const auto& entry : reports) {
      const AggregateMetrics& agg = entry.metrics.aggregate(averaging);
      out += format_csv_row({entry.section == ModelSection::supervised
                                 ? "supervised"
                                 : "generative",
                             display(entry.name), fixed4(agg.precision),
                             fixed4(agg.recall), fixed4(agg.f1)});
    }
    return out;
  }

  out += "| Model | Precision | Recall | F1-score |\n";
  out += "|---|---|---|---|\n";
  std::optional<ModelSection> current;
  for (const auto& entry : reports) {
    if (!current || *current != entry.section) {
      current = entry.section;
      out += "| **" + std::string(section_title(entry.section)) + "** | | | |\n";
    }
    const AggregateMetrics& agg = entry.metrics.aggregate(averaging);
    out += "| " + display(entry.name) + " | " + fixed4(agg.precision) + " | " +
           fixed4(agg.recall) + " | " + fixed4(agg.f1) + " |\n";
  }
  return out;
}

}  // namespace medkit
