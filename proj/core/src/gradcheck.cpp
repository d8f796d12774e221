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

#include "selene/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "selene/errors.hpp"
#include "selene/random.hpp"

namespace selene {

GradCheckReport finite_diff_check(const LossFn& loss, std::span<Parameter* const> params,
                                  const GradCheckOptions& options) {
  if (options.step <= 0.0) throw ConfigError("finite_diff_check: step must be positive");

  for (Parameter* p : params) p->zero_grad();
  const double base = loss(true);
  if (loss(false) != base) {
    throw UsageError("finite_diff_check: loss function is not deterministic");
  }
  std::vector<Matrix> analytic;
  analytic.reserve(params.size());
  for (const Parameter* p : params) analytic.push_back(p->grad);

  GradCheckReport report;
  Rng rng(options.seed);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    const std::size_t n = p.value.size();
    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (n > options.max_coords_per_param) {
      for (std::size_t i = 0; i < options.max_coords_per_param; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(coords[i], coords[pick(rng)]);
      }
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    for (std::size_t idx : coords) {
      double& w = p.value.data()[idx];
      const double saved = w;
      w = saved + options.step;
      const double up = loss(false);
      w = saved - options.step;
      const double down = loss(false);
      w = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double exact = analytic[k].data()[idx];
      const double denom =
          std::max({std::abs(exact), std::abs(numeric), options.denominator_floor});
      const double rel = std::abs(exact - numeric) / denom;
      ++report.coords_checked;
      if (report.coords_checked == 1 || rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_param = p.name;
        report.worst_index = idx;
        report.worst_analytic = exact;
        report.worst_numeric = numeric;
      }
    }
  }
  // Leave the gradients as the analytic values at the unperturbed point.
  for (std::size_t k = 0; k < params.size(); ++k) params[k]->grad = analytic[k];
  report.passed = report.max_rel_error <= options.tol;
  return report;
}

double central_difference(const std::function<double(double)>& f, double x, double step) {
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

}  // namespace selene
