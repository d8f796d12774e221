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

#ifndef SELENE_CHECKPOINT_HPP_
#define SELENE_CHECKPOINT_HPP_

#include <filesystem>
#include <string>

#include "selene/model.hpp"

namespace selene {

// JSON checkpoint:
//   {
//     "format": "selene-checkpoint", "version": 1,
//     "config": {"attr_dims": [...], "struct_dims": [...],
//                "struct_activation": "relu"},
//     "parameters": [{"name": "...", "rows": r, "cols": c,
//                     "data": [row-major values]}, ...]
//   }
// Values are written with round-trip precision; parameters appear in
// SeleneModel::parameters() order and are matched by name on load.
std::string checkpoint_to_string(const SeleneModel& model);
SeleneModel checkpoint_from_string(const std::string& text);

void save_checkpoint(const std::filesystem::path& file, const SeleneModel& model);
SeleneModel load_checkpoint(const std::filesystem::path& file);

}  // namespace selene

#endif  // SELENE_CHECKPOINT_HPP_
