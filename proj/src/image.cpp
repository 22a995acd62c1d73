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

#include "medkit/image.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "medkit/error.hpp"

namespace medkit {

namespace {

// Reads the next PGM header token, skipping whitespace and '#' comments.
std::string next_token(std::span<const std::uint8_t> bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (std::isspace(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::string token;
  while (pos < bytes.size() && !std::isspace(bytes[pos])) {
    token.push_back(static_cast<char>(bytes[pos]));
    ++pos;
  }
  return token;
}

std::size_t parse_dim(const std::string& token, const char* what) {
  if (token.empty()) throw InputError(std::string("PGM header missing ") + what);
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InputError(std::string("PGM header has non-numeric ") + what);
  }
  return static_cast<std::size_t>(std::stoull(token));
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 2;  // past "P5"
  GrayImage image;
  image.width = parse_dim(next_token(bytes, pos), "width");
  image.height = parse_dim(next_token(bytes, pos), "height");
  const std::size_t maxval = parse_dim(next_token(bytes, pos), "maxval");
  if (maxval == 0 || maxval > 255)
    throw InputError("unsupported PGM maxval: " + std::to_string(maxval));
  if (image.width == 0 || image.height == 0)
    throw InputError("PGM image has zero dimension");
  ++pos;  // single whitespace after maxval
  const std::size_t need = image.width * image.height;
  if (bytes.size() < pos + need)
    throw InputError("PGM payload truncated");
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
  return image;
}

}  // namespace

GrayImage decode_gray_image(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw InputError("empty image payload");
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    return decode_pgm(bytes);
  }
  // Raw fallback: square-ish grid, zero padded.
  GrayImage image;
  const auto side = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(bytes.size()))));
  image.width = side;
  image.height = side;
  image.pixels.assign(side * side, 0);
  std::memcpy(image.pixels.data(), bytes.data(), bytes.size());
  return image;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  std::string header = "P5\n" + std::to_string(image.width) + " " +
                       std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace medkit
