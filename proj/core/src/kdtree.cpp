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

#include "camotex/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camotex {

namespace {

inline std::int64_t sq(std::int64_t v) { return v * v; }

// (dist2, id) lexicographic order realizes the smallest-row-major-id tie rule.
inline bool better(std::int64_t d2, std::uint32_t id, const TexelKdTree::Hit& best) {
  return d2 < best.dist2 || (d2 == best.dist2 && id < best.id);
}

}  // namespace

TexelKdTree::TexelKdTree(std::vector<TexelPoint> points, int leaf_size)
    : points_(std::move(points)), leaf_size_(std::max(1, leaf_size)) {
  if (points_.empty())
    throw std::invalid_argument("kd-tree requires a nonempty point list");
  nodes_.reserve(2 * points_.size() / leaf_size_ + 2);
  root_ = build(0, static_cast<int>(points_.size()));
}

int TexelKdTree::build(int begin, int end) {
  int node_idx = static_cast<int>(nodes_.size());
  nodes_.push_back({});

  if (end - begin <= leaf_size_) {
    nodes_[node_idx].begin = begin;
    nodes_[node_idx].end = end;
    return node_idx;
  }

  int min_x = points_[begin].x, max_x = min_x;
  int min_y = points_[begin].y, max_y = min_y;
  for (int i = begin + 1; i < end; ++i) {
    min_x = std::min(min_x, points_[i].x);
    max_x = std::max(max_x, points_[i].x);
    min_y = std::min(min_y, points_[i].y);
    max_y = std::max(max_y, points_[i].y);
  }
  int axis = (max_x - min_x) >= (max_y - min_y) ? 0 : 1;

  int mid = begin + (end - begin) / 2;
  auto coord = [axis](const TexelPoint& p) { return axis == 0 ? p.x : p.y; };
  std::nth_element(points_.begin() + begin, points_.begin() + mid,
                   points_.begin() + end,
                   [&](const TexelPoint& a, const TexelPoint& b) {
                     int ca = coord(a), cb = coord(b);
                     return ca != cb ? ca < cb : a.id < b.id;
                   });

  int split = coord(points_[mid]);
  int left = build(begin, mid);
  int right = build(mid, end);
  Node& n = nodes_[node_idx];
  n.axis = axis;
  n.split = split;
  n.left = left;
  n.right = right;
  return node_idx;
}

void TexelKdTree::search(int node_idx, int qx, int qy, Hit& best) const {
  const Node& n = nodes_[node_idx];
  if (n.leaf()) {
    for (int i = n.begin; i < n.end; ++i) {
      const TexelPoint& p = points_[i];
      std::int64_t d2 = sq(p.x - qx) + sq(p.y - qy);
      if (better(d2, p.id, best)) best = {p.id, p.x, p.y, d2, 0.0};
    }
    return;
  }

  int qc = n.axis == 0 ? qx : qy;
  int first = qc < n.split ? n.left : n.right;
  int second = first == n.left ? n.right : n.left;
  search(first, qx, qy, best);
  // The far side may still hold an equal-distance point with a smaller id,
  // so it is pruned only when strictly farther than the current best.
  std::int64_t plane_d2 = sq(static_cast<std::int64_t>(qc) - n.split);
  if (plane_d2 <= best.dist2) search(second, qx, qy, best);
}

TexelKdTree::Hit TexelKdTree::nearest(int qx, int qy) const {
  Hit best;
  best.dist2 = INT64_MAX;
  search(root_, qx, qy, best);
  best.dist = std::sqrt(static_cast<double>(best.dist2));
  return best;
}

}  // namespace camotex
