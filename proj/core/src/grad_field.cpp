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

#include "camotex/grad_field.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace camotex {

void GradField::recompute_touched() {
  touched.clear();
  std::uint32_t n = static_cast<std::uint32_t>(static_cast<std::size_t>(width) * height);
  for (std::uint32_t t = 0; t < n; ++t)
    if (nonzero_at(t)) touched.push_back(t);
}

void apply_mask(GradField& field, const std::vector<std::uint8_t>& mask) {
  std::vector<std::uint32_t> kept;
  kept.reserve(field.touched.size());
  for (std::uint32_t t : field.touched) {
    if (mask[t]) {
      kept.push_back(t);
    } else {
      std::size_t b = static_cast<std::size_t>(t) * 3;
      field.data[b] = field.data[b + 1] = field.data[b + 2] = 0.0;
    }
  }
  field.touched = std::move(kept);
}

double dot(const GradField& a, const GradField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

double squared_norm(const GradField& f) { return dot(f, f); }

void axpy_into(double alpha, const GradField& x, GradField& y) {
  for (std::size_t i = 0; i < x.data.size(); ++i) y.data[i] += alpha * x.data[i];
}

void save_gradfield_heatmap(const GradField& field, int channel,
                            const std::string& path) {
  if (channel < 0 || channel > 2) throw std::invalid_argument("channel must be 0..2");
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  std::size_t n = static_cast<std::size_t>(field.width) * field.height;
  for (std::size_t t = 0; t < n; ++t) {
    double v = field.data[t * 3 + channel];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P6\n# min=" << lo << " max=" << hi << "\n"
      << field.width << " " << field.height << "\n255\n";
  for (std::size_t t = 0; t < n; ++t) {
    double v = field.data[t * 3 + channel];
    auto b = static_cast<unsigned char>(std::clamp((v - lo) * scale, 0.0, 255.0));
    unsigned char px[3] = {b, b, b};
    out.write(reinterpret_cast<const char*>(px), 3);
  }
}

void save_touched_mask(const GradField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P6\n" << field.width << " " << field.height << "\n255\n";
  std::vector<unsigned char> raw(static_cast<std::size_t>(field.width) * field.height * 3, 0);
  for (std::uint32_t t : field.touched) {
    std::size_t b = static_cast<std::size_t>(t) * 3;
    raw[b] = raw[b + 1] = raw[b + 2] = 255;
  }
  out.write(reinterpret_cast<const char*>(raw.data()), raw.size());
}

}  // namespace camotex
