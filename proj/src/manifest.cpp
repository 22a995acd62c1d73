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

#include "medkit/manifest.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

#include "medkit/csv.hpp"
#include "medkit/error.hpp"

namespace medkit {

namespace {

// Column positions within the manifest header; split may legitimately be
// absent (all rows become `infer`).
struct HeaderLayout {
  std::size_t id, text, image, label;
  std::optional<std::size_t> split;
};

HeaderLayout resolve_header(const std::vector<std::string>& header) {
  auto find_unique = [&](const std::string& name) -> std::optional<std::size_t> {
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] != name) continue;
      if (pos) throw FormatError("duplicate manifest column: " + name);
      pos = i;
    }
    return pos;
  };

  HeaderLayout layout{};
  for (const char* required : {"id", "text", "image_path", "label"}) {
    if (!find_unique(required))
      throw FormatError(std::string("missing manifest column: ") + required);
  }
  layout.id = *find_unique("id");
  layout.text = *find_unique("text");
  layout.image = *find_unique("image_path");
  layout.label = *find_unique("label");
  layout.split = find_unique("split");
  return layout;
}

}  // namespace

std::vector<std::size_t> DatasetManifest::indices_of(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].split == split) out.push_back(i);
  }
  return out;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const CsvTable table = read_csv_file(path);
  const HeaderLayout layout = resolve_header(table.header);

  DatasetManifest manifest;
  manifest.source_path = path.string();
  manifest.rows.reserve(table.rows.size());
  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(table.rows.size());

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& fields = table.rows[r];
    const std::size_t row_number = r + 2;  // header is row 1
    if (fields.size() != table.header.size()) {
      throw RowError("expected " + std::to_string(table.header.size()) +
                         " fields, got " + std::to_string(fields.size()),
                     row_number);
    }

    Instance instance;
    instance.id = fields[layout.id];
    instance.text = fields[layout.text];
    instance.image_path = fields[layout.image];
    if (instance.id.empty()) throw RowError("empty instance id", row_number);
    if (!seen_ids.insert(instance.id).second) {
      throw IntegrityError("duplicate instance id '" + instance.id +
                           "' at row " + std::to_string(row_number));
    }

    if (layout.split) {
      const std::string& raw = fields[*layout.split];
      auto split = parse_split(raw);
      if (!split) throw RowError("unknown split '" + raw + "'", row_number);
      instance.split = *split;
    } else {
      instance.split = Split::infer;
    }

    const std::string& raw_label = fields[layout.label];
    if (raw_label.empty()) {
      if (instance.split != Split::infer) {
        throw RowError("unlabeled row outside the infer split", row_number);
      }
    } else {
      auto label = parse_label(raw_label);
      if (!label) throw RowError("unknown label '" + raw_label + "'", row_number);
      instance.label = *label;
    }

    manifest.rows.push_back(std::move(instance));
  }
  return manifest;
}

std::vector<StatsRow> dataset_stats(const DatasetManifest& manifest) {
  std::array<StatsRow, kNumLabels> per_label;
  for (EventLabel label : all_labels()) {
    per_label[label_index(label)].label = std::string(display_name(label));
  }
  StatsRow total_row;
  total_row.label = "Total";

  for (const Instance& instance : manifest.rows) {
    if (!instance.label) continue;
    StatsRow& row = per_label[label_index(*instance.label)];
    row.total += 1;
    total_row.total += 1;
    if (instance.split == Split::test) {
      row.test += 1;
      total_row.test += 1;
    } else if (instance.split == Split::train) {
      row.train += 1;
      total_row.train += 1;
    }
  }

  std::vector<StatsRow> rows(per_label.begin(), per_label.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const StatsRow& a, const StatsRow& b) {
                     return a.total > b.total;
                   });
  rows.push_back(total_row);
  return rows;
}

std::string format_stats_table(const std::vector<StatsRow>& rows) {
  std::size_t label_width = 5;
  for (const auto& row : rows) label_width = std::max(label_width, row.label.size());

  std::ostringstream out;
  auto emit = [&](const std::string& label, const std::string& test,
                  const std::string& train, const std::string& total) {
    out << label << std::string(label_width - label.size(), ' ');
    for (const std::string* col : {&test, &train, &total}) {
      out << "  " << std::string(col->size() < 8 ? 8 - col->size() : 0, ' ')
          << *col;
    }
    out << '\n';
  };
  emit("Label", "Test", "Train", "Total");
  for (const auto& row : rows) {
    emit(row.label, std::to_string(row.test), std::to_string(row.train),
         std::to_string(row.total));
  }
  return out.str();
}

std::map<EventLabel, double> class_weights(const DatasetManifest& manifest) {
  std::map<EventLabel, std::size_t> train_counts;
  std::unordered_set<int> present;
  std::size_t train_total = 0;
  for (const Instance& instance : manifest.rows) {
    if (!instance.label) continue;
    present.insert(label_index(*instance.label));
    if (instance.split == Split::train) {
      train_counts[*instance.label] += 1;
      train_total += 1;
    }
  }
  if (present.empty()) throw ConfigError("manifest has no labeled rows");

  std::map<EventLabel, double> weights;
  double sum = 0.0;
  for (EventLabel label : all_labels()) {
    if (!present.count(label_index(label))) continue;
    auto it = train_counts.find(label);
    if (it == train_counts.end() || it->second == 0) {
      throw ConfigError("class '" + std::string(display_name(label)) +
                        "' is absent from the train split");
    }
    const double w = static_cast<double>(train_total) /
                     static_cast<double>(it->second);
    weights[label] = w;
    sum += w;
  }
  for (auto& [label, w] : weights) w /= sum;
  return weights;
}

}  // namespace medkit
