// Copyright 2026 The Selene Authors
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

#include "selene/adam.hpp"

#include <cmath>

#include "selene/errors.hpp"

namespace selene {

void Adam::step(std::span<Parameter* const> params) {
  if (first_.empty()) {
    for (const Parameter* p : params) {
      first_.emplace_back(p->value.rows(), p->value.cols());
      second_.emplace_back(p->value.rows(), p->value.cols());
    }
  }
  if (first_.size() != params.size()) {
    throw UsageError("Adam::step: parameter list changed between steps");
  }
  ++step_;
  const double t = static_cast<double>(step_);
  const double correction1 = 1.0 - std::pow(options_.beta1, t);
  const double correction2 = 1.0 - std::pow(options_.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    Matrix& m = first_[k];
    Matrix& v = second_[k];
    if (!m.same_shape(p.value)) throw UsageError("Adam::step: moment shape mismatch for " + p.name);
    auto w = p.value.data();
    auto g = p.grad.data();
    auto md = m.data();
    auto vd = v.data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      md[i] = options_.beta1 * md[i] + (1.0 - options_.beta1) * g[i];
      vd[i] = options_.beta2 * vd[i] + (1.0 - options_.beta2) * g[i] * g[i];
      const double m_hat = md[i] / correction1;
      const double v_hat = vd[i] / correction2;
      w[i] -= options_.lr * m_hat / (std::sqrt(v_hat) + options_.eps);
    }
    p.zero_grad();
  }
}

}  // namespace selene
