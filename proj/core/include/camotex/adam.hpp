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

#include <cstddef>
#include <vector>

#include "camotex/grad_field.hpp"
#include "camotex/texture.hpp"

namespace camotex {

struct AdamConfig {
  double lr = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Moment buffers exist only for trainable texels,
// in the order of Texture::trainable; masked texels carry no optimizer state
// and are never written.
class AdamState {
 public:
  explicit AdamState(std::size_t trainable_count)
      : m_(trainable_count * 3, 0.0), v_(trainable_count * 3, 0.0) {}

  // One descent step on the trainable region; the texture is clamped back
  // into [0,1] afterwards.
  void apply(Texture& texture, const GradField& grad, const AdamConfig& config);

  long step_count() const { return step_; }

 private:
  std::vector<double> m_;
  std::vector<double> v_;
  long step_ = 0;
};

}  // namespace camotex
