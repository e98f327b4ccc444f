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

#include "camotex/sample_map.hpp"

#include <algorithm>

namespace camotex {

std::vector<std::uint32_t> SampleMap::sampled_texels() const {
  std::vector<std::uint32_t> out;
  for (std::int64_t t : texel)
    if (t >= 0) out.push_back(static_cast<std::uint32_t>(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::unordered_map<std::uint32_t, int> SampleMap::pixels_per_texel() const {
  std::unordered_map<std::uint32_t, int> counts;
  for (std::int64_t t : texel)
    if (t >= 0) ++counts[static_cast<std::uint32_t>(t)];
  return counts;
}

}  // namespace camotex
