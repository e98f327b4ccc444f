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

#pragma once

#include <cstdint>
#include <vector>

namespace camotex {

struct TexelPoint {
  int x = 0;  // u_texel (column)
  int y = 0;  // v_texel (row)
  std::uint32_t id = 0;  // row-major texel id
};

// Balanced 2D KD-tree over integer texel coordinates, exact nearest
// neighbor. Squared distances are computed in 64-bit integers, so results
// are exact; ties are broken by the smallest row-major texel id, which makes
// queries a total order and lets callers compare against a linear scan
// bit for bit.
class TexelKdTree {
 public:
  struct Hit {
    std::uint32_t id = 0;
    int x = 0, y = 0;
    std::int64_t dist2 = 0;
    double dist = 0.0;
  };

  // Throws std::invalid_argument on an empty point list.
  explicit TexelKdTree(std::vector<TexelPoint> points, int leaf_size = 16);

  Hit nearest(int qx, int qy) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    // Leaf: [begin, end) into points_. Interior: split axis/coordinate and
    // child node indices.
    int begin = 0, end = 0;
    int axis = -1;
    int split = 0;
    int left = -1, right = -1;
    bool leaf() const { return axis < 0; }
  };

  int build(int begin, int end);
  void search(int node, int qx, int qy, Hit& best) const;

  std::vector<TexelPoint> points_;
  std::vector<Node> nodes_;
  int leaf_size_;
  int root_ = -1;
};

}  // namespace camotex
