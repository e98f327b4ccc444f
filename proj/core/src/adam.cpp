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

#include "camotex/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace camotex {

void AdamState::apply(Texture& texture, const GradField& grad,
                      const AdamConfig& config) {
  if (m_.size() != texture.trainable.size() * 3)
    throw std::invalid_argument("optimizer state does not match the trainable region");
  if (grad.width != texture.width || grad.height != texture.height)
    throw std::invalid_argument("gradient dimensions do not match the texture");

  ++step_;
  double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step_));
  double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step_));

  for (std::size_t s = 0; s < texture.trainable.size(); ++s) {
    std::uint32_t t = texture.trainable[s];
    for (int c = 0; c < 3; ++c) {
      std::size_t i = s * 3 + c;
      double g = grad.at(t, c);
      m_[i] = config.beta1 * m_[i] + (1.0 - config.beta1) * g;
      v_[i] = config.beta2 * v_[i] + (1.0 - config.beta2) * g * g;
      double m_hat = m_[i] / bc1;
      double v_hat = v_[i] / bc2;
      texture.at(t, c) -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
  }
  texture.clamp01();
}

}  // namespace camotex
