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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "selene/dataset_io.hpp"
#include "selene/errors.hpp"
#include "support/oracles.hpp"

namespace selene {
namespace {
namespace fs = std::filesystem;

class DatasetIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("selene_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(DatasetIo, LoadsHandBuiltToyFiles) {
  write("edges.tsv", "# toy graph\n0\t1\n1\t0\n1\t2\n\n3\t3\n");
  write("features.tsv", "1.5\t-2\n0\t0\n3e-1\t4\n7\t8\n");
  write("labels.tsv", "0\n1\n1\n0\n");
  const Graph g = load_dataset(dir_);
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.attribute_dim(), 2u);
  EXPECT_EQ(g.attributes()(0, 0), 1.5);
  EXPECT_EQ(g.attributes()(2, 0), 0.3);
  EXPECT_EQ(g.num_classes(), 2);
  EXPECT_EQ(g.degree(3), 0u);
}

TEST_F(DatasetIo, LabelsAreOptional) {
  write("edges.tsv", "0\t1\n");
  write("features.tsv", "1\n2\n");
  const Graph g = load_dataset(dir_);
  EXPECT_FALSE(g.has_labels());
}

TEST_F(DatasetIo, ReportsMalformedInput) {
  write("features.tsv", "1\t2\n3\n");
  write("edges.tsv", "0\t1\n");
  EXPECT_THROW(load_dataset(dir_), IoError);
  write("features.tsv", "1\t2\n3\t4\n");
  write("edges.tsv", "0\tx\n");
  EXPECT_THROW(load_dataset(dir_), IoError);
  write("edges.tsv", "0\t2\n");
  EXPECT_THROW(load_dataset(dir_), IoError);
  write("edges.tsv", "0\t1\n");
  write("labels.tsv", "0\n");
  EXPECT_THROW(load_dataset(dir_), IoError);
  fs::remove(dir_ / "edges.tsv");
  EXPECT_THROW(load_dataset(dir_), IoError);
}

TEST_F(DatasetIo, RoundTripIsExact) {
  std::mt19937_64 rng(5);
  const Graph g = oracle::random_labeled_graph(25, 0.2, 3, rng, 3);
  write_dataset(dir_, g);
  const Graph h = load_dataset(dir_);
  EXPECT_EQ(h.edges(), g.edges());
  EXPECT_EQ(h.attributes(), g.attributes());
  ASSERT_TRUE(h.has_labels());
  EXPECT_TRUE(std::equal(h.labels().begin(), h.labels().end(), g.labels().begin()));
}

TEST(MatrixTsv, WritesFullPrecision) {
  const Matrix m = Matrix::from_rows({{0.1, -1e-300}, {1.0 / 3.0, 2.0}});
  std::ostringstream out;
  write_matrix_tsv(out, m);
  const fs::path file = fs::temp_directory_path() / "selene_matrix_tsv.tsv";
  std::ofstream(file) << out.str();
  EXPECT_EQ(read_matrix_tsv(file), m);
  fs::remove(file);
}

}  // namespace
}  // namespace selene
