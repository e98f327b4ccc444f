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

#include <vector>

#include "camotex/grad_field.hpp"

namespace camotex {

// Loss-prioritized gradient decorrelation. Per-view gradients within a
// minibatch can be redundant (near-parallel) or conflicting (opposing); both
// degrade the averaged update. The batch is sorted by descending loss so the
// hardest viewpoint is processed first, sequentially orthogonalized
// (classical Gram-Schmidt, projecting each raw gradient against all earlier
// orthogonalized outputs), and averaged.

// One viewpoint's contribution to a minibatch update.
struct ViewGrad {
  double loss = 0.0;
  GradField grad;
  int view_index = 0;  // ordinal in the minibatch
};

struct LpgdConfig {
  int k = 8;               // minibatch size
  double eps_rel = 1e-12;  // relative threshold for skipping degenerate projections
};

// Descending by loss, stable: equal losses keep ascending view_index order.
// Throws std::invalid_argument on an empty batch.
std::vector<ViewGrad> sort_by_loss(std::vector<ViewGrad> batch);

// Classical Gram-Schmidt in the given order. The first gradient passes
// through unchanged. Projections against outputs whose squared norm does
// not exceed eps_abs are skipped, so duplicate inputs produce exact zero outputs
// instead of dividing by ~0. All inner products are double precision over
// the flattened trainable vector.
std::vector<GradField> orthogonalize(const std::vector<ViewGrad>& ordered,
                                     double eps_abs);

// Texelwise mean of k fields. Throws on length mismatch.
GradField aggregate(const std::vector<GradField>& orthogonal, int k);

// aggregate(orthogonalize(sort_by_loss(batch))), with the skip threshold
// scaled to the batch: eps_abs = eps_rel * mean squared input norm.
GradField decorrelate(std::vector<ViewGrad> batch, const LpgdConfig& config);

// Upper triangle (i < j), row by row, of the pairwise cosine-similarity
// matrix; zero-norm fields count as cosine 0. Used by the optional per-step
// diagnostics CSV.
std::vector<double> pairwise_cosines(const std::vector<const GradField*>& fields);

}  // namespace camotex
