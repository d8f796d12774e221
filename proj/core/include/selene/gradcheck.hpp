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

#ifndef SELENE_GRADCHECK_HPP_
#define SELENE_GRADCHECK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "selene/tape.hpp"

namespace selene {

struct GradCheckOptions {
  double step = 1e-6;
  double tol = 1e-5;
  // Relative error is |analytic - numeric| / max(|analytic|, |numeric|, floor),
  // so coordinates with vanishing gradient are judged on absolute error.
  double denominator_floor = 1e-3;
  // Parameters with more coordinates than this are checked on a random subset.
  std::size_t max_coords_per_param = 256;
  std::uint64_t seed = 0;
};

struct GradCheckReport {
  bool passed = false;
  double max_rel_error = 0.0;
  std::size_t coords_checked = 0;
  // Worst coordinate.
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Compares analytic gradients against central differences. `loss` must build
// its own tape, and when called with with_grad=true also run backward so
// that gradients land in the params' grad slots. Params are restored exactly.
using LossFn = std::function<double(bool with_grad)>;

GradCheckReport finite_diff_check(const LossFn& loss, std::span<Parameter* const> params,
                                  const GradCheckOptions& options = {});

// Scalar convenience for f: R -> R; returns the central difference.
double central_difference(const std::function<double(double)>& f, double x,
                          double step = 1e-6);

}  // namespace selene

#endif  // SELENE_GRADCHECK_HPP_
