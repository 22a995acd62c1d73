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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace medkit {

/// Parsed delimiter-separated content. The first record is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 parse: quoted fields may contain commas, escaped quotes ("")
/// and embedded line breaks. Accepts both LF and CRLF records. Throws
/// FormatError on unbalanced quotes or an empty document.
CsvTable parse_csv(std::string_view text);

CsvTable read_csv_file(const std::filesystem::path& path);

/// Quotes a field if it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

std::string format_csv_row(const std::vector<std::string>& fields);

void write_csv_file(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

}  // namespace medkit
