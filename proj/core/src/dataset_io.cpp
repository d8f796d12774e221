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

#include "selene/dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "selene/errors.hpp"

namespace selene {
namespace fs = std::filesystem;

namespace {

bool skip_line(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == '\t' || line[pos] == ' ' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != '\t' && line[end] != ' ' && line[end] != '\r') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, const fs::path& file, std::size_t line_no) {
  T value{};
  const auto* begin = field.data();
  const auto* end = field.data() + field.size();
  // Leading '+' is not accepted by from_chars.
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw IoError(file.string() + ":" + std::to_string(line_no) + ": cannot parse '" +
                  std::string(field) + "'");
  }
  return value;
}

std::ifstream open_input(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  return in;
}

}  // namespace

Matrix read_matrix_tsv(const fs::path& file) {
  std::ifstream in = open_input(file);
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto fields = split_fields(line);
    if (rows == 0) cols = fields.size();
    if (fields.size() != cols) {
      throw IoError(file.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(cols) + " columns, got " + std::to_string(fields.size()));
    }
    for (auto f : fields) data.push_back(parse_number<double>(f, file, line_no));
    ++rows;
  }
  return Matrix(rows, cols, std::move(data));
}

void write_matrix_tsv(std::ostream& out, const Matrix& m) {
  char buf[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out.put('\t');
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << buf;
    }
    out.put('\n');
  }
}

void write_matrix_tsv(const fs::path& file, const Matrix& m) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  write_matrix_tsv(out, m);
  if (!out) throw IoError("write failed: " + file.string());
}

Graph load_dataset(const fs::path& dir) {
  const fs::path features_file = dir / "features.tsv";
  const fs::path edges_file = dir / "edges.tsv";
  const fs::path labels_file = dir / "labels.tsv";
  if (!fs::exists(features_file)) throw IoError("missing " + features_file.string());
  if (!fs::exists(edges_file)) throw IoError("missing " + edges_file.string());

  Matrix features = read_matrix_tsv(features_file);

  std::vector<Edge> edges;
  {
    std::ifstream in = open_input(edges_file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      const auto fields = split_fields(line);
      if (fields.size() != 2) {
        throw IoError(edges_file.string() + ":" + std::to_string(line_no) +
                      ": expected 'u<TAB>v'");
      }
      edges.emplace_back(parse_number<NodeId>(fields[0], edges_file, line_no),
                         parse_number<NodeId>(fields[1], edges_file, line_no));
    }
  }

  std::optional<std::vector<int>> labels;
  if (fs::exists(labels_file)) {
    std::ifstream in = open_input(labels_file);
    std::vector<int> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      const auto fields = split_fields(line);
      if (fields.size() != 1) {
        throw IoError(labels_file.string() + ":" + std::to_string(line_no) +
                      ": expected one label");
      }
      values.push_back(parse_number<int>(fields[0], labels_file, line_no));
    }
    labels = std::move(values);
  }

  try {
    return Graph::from_edges(edges, std::move(features), std::move(labels));
  } catch (const Error& e) {
    throw IoError(dir.string() + ": " + e.what());
  }
}

void write_dataset(const fs::path& dir, const Graph& g) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "edges.tsv");
    if (!out) throw IoError("cannot write " + (dir / "edges.tsv").string());
    for (const auto& [u, v] : g.edges()) out << u << '\t' << v << '\n';
  }
  write_matrix_tsv(dir / "features.tsv", g.attributes());
  if (g.has_labels()) {
    std::ofstream out(dir / "labels.tsv");
    if (!out) throw IoError("cannot write " + (dir / "labels.tsv").string());
    for (int y : g.labels()) out << y << '\n';
  }
}

}  // namespace selene
