// Copyright 2026 The Semannot Authors.
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

#ifndef SEMANNOT_TESTS_TEST_UTIL_HPP_
#define SEMANNOT_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "semannot/labels.hpp"
#include "semannot/sparse.hpp"

namespace semannot::testing {

inline SparseVector vec(std::size_t dim, const std::map<FeatureIndex, double>& entries) {
  return SparseVector::from_map(entries, dim);
}

inline LabelMatrix label_matrix(std::size_t n_labels, std::vector<LabelSet> rows) {
  LabelMatrix m;
  m.n_labels = n_labels;
  m.rows = std::move(rows);
  return m;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("semannot_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace semannot::testing

#endif  // SEMANNOT_TESTS_TEST_UTIL_HPP_
