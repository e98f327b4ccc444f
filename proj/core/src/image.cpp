// Copyright 2026 The camotex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "camotex/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "camotex/mesh.hpp"  // ParseError

namespace camotex {

namespace {

// Skips whitespace and '#' comments between PPM header fields.
int next_header_int(std::istream& in, const std::string& path) {
  while (true) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int v = 0;
  if (!(in >> v)) throw ParseError(path, 1, "malformed PPM header");
  return v;
}

}  // namespace

void save_ppm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(img.width) * 3);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) {
        double v = std::clamp(img.at(x, y, c), 0.0, 1.0);
        row[static_cast<std::size_t>(x) * 3 + c] =
            static_cast<unsigned char>(std::lround(v * 255.0));
      }
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Image load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw ParseError(path, 1, "not a binary PPM (P6) file");
  int w = next_header_int(in, path);
  int h = next_header_int(in, path);
  int maxval = next_header_int(in, path);
  if (w <= 0 || h <= 0 || maxval != 255)
    throw ParseError(path, 1, "unsupported PPM geometry or maxval");
  in.get();  // single whitespace after maxval

  Image img(w, h);
  std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(raw.data()), raw.size());
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw ParseError(path, 1, "truncated PPM pixel data");
  for (std::size_t i = 0; i < raw.size(); ++i)
    img.rgb[i] = static_cast<double>(raw[i]) / 255.0;
  return img;
}

Image hconcat(const std::vector<Image>& tiles) {
  if (tiles.empty()) throw std::invalid_argument("hconcat: no tiles");
  int h = tiles[0].height;
  int w = 0;
  for (const Image& t : tiles) {
    if (t.height != h) throw std::invalid_argument("hconcat: height mismatch");
    w += t.width;
  }
  Image out(w, h);
  int x0 = 0;
  for (const Image& t : tiles) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < t.width; ++x)
        for (int c = 0; c < 3; ++c) out.at(x0 + x, y, c) = t.at(x, y, c);
    x0 += t.width;
  }
  return out;
}

}  // namespace camotex
