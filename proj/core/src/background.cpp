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

#include "camotex/background.hpp"

#include <sstream>
#include <stdexcept>

namespace camotex {

namespace {

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    vals.push_back(std::stod(item, &used));
    if (used != item.size())
      throw std::invalid_argument("malformed number in background spec: " + item);
  }
  return vals;
}

}  // namespace

std::string BackgroundSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Flat:
      out << "flat:" << top.x << "," << top.y << "," << top.z;
      break;
    case Kind::Gradient:
      out << "gradient:" << top.x << "," << top.y << "," << top.z << ","
          << bottom.x << "," << bottom.y << "," << bottom.z;
      break;
    case Kind::File:
      out << path;
      break;
  }
  return out.str();
}

BackgroundSpec parse_background_spec(const std::string& spec) {
  BackgroundSpec bg;
  if (spec.rfind("flat:", 0) == 0) {
    auto v = parse_numbers(spec.substr(5));
    if (v.size() != 3) throw std::invalid_argument("flat background needs R,G,B");
    bg.kind = BackgroundSpec::Kind::Flat;
    bg.top = {v[0], v[1], v[2]};
  } else if (spec == "gradient") {
    bg.kind = BackgroundSpec::Kind::Gradient;
  } else if (spec.rfind("gradient:", 0) == 0) {
    auto v = parse_numbers(spec.substr(9));
    if (v.size() != 6)
      throw std::invalid_argument("gradient background needs top R,G,B,bottom R,G,B");
    bg.kind = BackgroundSpec::Kind::Gradient;
    bg.top = {v[0], v[1], v[2]};
    bg.bottom = {v[3], v[4], v[5]};
  } else if (!spec.empty()) {
    bg.kind = BackgroundSpec::Kind::File;
    bg.path = spec;
  } else {
    throw std::invalid_argument("empty background spec");
  }
  return bg;
}

Image make_background(const BackgroundSpec& spec, int w, int h) {
  switch (spec.kind) {
    case BackgroundSpec::Kind::Flat: {
      Image img(w, h);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          img.at(x, y, 0) = spec.top.x;
          img.at(x, y, 1) = spec.top.y;
          img.at(x, y, 2) = spec.top.z;
        }
      return img;
    }
    case BackgroundSpec::Kind::Gradient: {
      Image img(w, h);
      for (int y = 0; y < h; ++y) {
        double t = h > 1 ? static_cast<double>(y) / (h - 1) : 0.0;
        double r = spec.top.x + (spec.bottom.x - spec.top.x) * t;
        double g = spec.top.y + (spec.bottom.y - spec.top.y) * t;
        double b = spec.top.z + (spec.bottom.z - spec.top.z) * t;
        for (int x = 0; x < w; ++x) {
          img.at(x, y, 0) = r;
          img.at(x, y, 1) = g;
          img.at(x, y, 2) = b;
        }
      }
      return img;
    }
    case BackgroundSpec::Kind::File: {
      Image img = load_ppm(spec.path);
      if (img.width != w || img.height != h)
        throw std::invalid_argument("background image size does not match render size");
      return img;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace camotex
