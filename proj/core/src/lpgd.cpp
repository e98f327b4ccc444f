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

#include "camotex/lpgd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camotex {

std::vector<ViewGrad> sort_by_loss(std::vector<ViewGrad> batch) {
  if (batch.empty()) throw std::invalid_argument("empty minibatch");
  std::stable_sort(batch.begin(), batch.end(),
                   [](const ViewGrad& a, const ViewGrad& b) { return a.loss > b.loss; });
  return batch;
}

std::vector<GradField> orthogonalize(const std::vector<ViewGrad>& ordered,
                                     double eps_abs) {
  if (ordered.empty()) throw std::invalid_argument("empty minibatch");

  std::vector<GradField> out;
  out.reserve(ordered.size());
  std::vector<double> out_sq;  // cached ||out_j||^2
  out_sq.reserve(ordered.size());

  for (std::size_t i = 0; i < ordered.size(); ++i) {
    GradField residual = ordered[i].grad;
    // Coefficients use the raw input gradient, not the running residual.
    for (std::size_t j = 0; j < i; ++j) {
      if (out_sq[j] <= eps_abs) continue;  // degenerate direction, skipped
      double alpha = dot(ordered[i].grad, out[j]) / out_sq[j];
      axpy_into(-alpha, out[j], residual);
    }
    residual.recompute_touched();
    out_sq.push_back(squared_norm(residual));
    out.push_back(std::move(residual));
  }
  return out;
}

GradField aggregate(const std::vector<GradField>& orthogonal, int k) {
  if (k < 1 || orthogonal.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("aggregate: list length must equal k");
  GradField sum(orthogonal[0].width, orthogonal[0].height);
  for (const GradField& f : orthogonal) axpy_into(1.0, f, sum);
  double inv_k = 1.0 / static_cast<double>(k);
  for (double& v : sum.data) v *= inv_k;
  sum.recompute_touched();
  return sum;
}

GradField decorrelate(std::vector<ViewGrad> batch, const LpgdConfig& config) {
  if (batch.empty()) throw std::invalid_argument("empty minibatch");

  // The skip threshold tracks the batch scale: gradient magnitudes vary over
  // training, so an absolute cutoff would misfire at extreme scales.
  double mean_sq = 0.0;
  for (const ViewGrad& v : batch) mean_sq += squared_norm(v.grad);
  mean_sq /= static_cast<double>(batch.size());
  double eps_abs = config.eps_rel * mean_sq;

  int k = static_cast<int>(batch.size());
  return aggregate(orthogonalize(sort_by_loss(std::move(batch)), eps_abs), k);
}

std::vector<double> pairwise_cosines(const std::vector<const GradField*>& fields) {
  std::vector<double> cos;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      double nij = std::sqrt(squared_norm(*fields[i]) * squared_norm(*fields[j]));
      cos.push_back(nij > 0.0 ? dot(*fields[i], *fields[j]) / nij : 0.0);
    }
  return cos;
}

}  // namespace camotex
