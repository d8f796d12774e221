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

#ifndef SELENE_DATASET_IO_HPP_
#define SELENE_DATASET_IO_HPP_

#include <filesystem>
#include <ostream>

#include "selene/graph.hpp"
#include "selene/matrix.hpp"

namespace selene {

// Three-file TSV dataset layout:
//   edges.tsv     "u<TAB>v" per line, 0-based ids; symmetrized and deduplicated
//   features.tsv  one row of tab-separated reals per node (defines n)
//   labels.tsv    one integer per line (optional)
// Blank lines and lines starting with '#' are skipped.
Graph load_dataset(const std::filesystem::path& dir);
void write_dataset(const std::filesystem::path& dir, const Graph& g);

Matrix read_matrix_tsv(const std::filesystem::path& file);
// 17 significant digits, so values round-trip exactly.
void write_matrix_tsv(std::ostream& out, const Matrix& m);
void write_matrix_tsv(const std::filesystem::path& file, const Matrix& m);

}  // namespace selene

#endif  // SELENE_DATASET_IO_HPP_
