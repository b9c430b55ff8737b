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

#include <random>

#include <gtest/gtest.h>

#include "semannot/error.hpp"
#include "semannot/knn.hpp"
#include "semannot/rocchio.hpp"
#include "test_util.hpp"

namespace semannot {
namespace {

using testing::label_matrix;
using testing::vec;

TEST(KnnTest, ExactMatchReturnsItsLabels) {
  const std::vector<SparseVector> x{vec(3, {{0, 1.0}}), vec(3, {{1, 1.0}, {2, 1.0}}), vec(3, {{2, 1.0}})};
  const KnnModel m(x, label_matrix(4, {{0}, {1, 3}, {2}}));
  EXPECT_EQ(m.predict(x[1]).labels, (LabelSet{1, 3}));
  EXPECT_FALSE(m.predict(x[1]).zero_query);
}

TEST(KnnTest, TiesGoToLowestOrdinal) {
  const std::vector<SparseVector> x{vec(3, {{0, 1.0}}), vec(3, {{1, 1.0}})};
  const KnnModel m(x, label_matrix(2, {{1}, {0}}));
  EXPECT_EQ(m.predict(vec(3, {{0, 1.0}, {1, 1.0}})).labels, LabelSet{1});
}

TEST(KnnTest, ZeroQueryFallsBackToFirstDocument) {
  const std::vector<SparseVector> x{vec(3, {{0, 1.0}}), vec(3, {{1, 1.0}})};
  const KnnModel m(x, label_matrix(2, {{1}, {0}}));
  const auto p = m.predict(SparseVector(3));
  EXPECT_EQ(p.labels, LabelSet{1});
  EXPECT_TRUE(p.zero_query);
}

TEST(KnnTest, EmptyTrainingSetIsAnError) {
  EXPECT_THROW(KnnModel({}, label_matrix(1, {})), Error);
}

TEST(KnnTest, NearestOrderingAndExclusion) {
  const std::vector<SparseVector> x{vec(2, {{0, 1.0}}), vec(2, {{0, 1.0}, {1, 1.0}}), vec(2, {{1, 1.0}})};
  const KnnIndex index(x);
  const auto all = index.nearest(vec(2, {{0, 2.0}, {1, 1.0}}), 10);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].ordinal, 1u);
  EXPECT_EQ(all[1].ordinal, 0u);
  EXPECT_EQ(all[2].ordinal, 2u);
  const auto loo = index.nearest(x[1], 1, 1);
  ASSERT_EQ(loo.size(), 1u);
  EXPECT_EQ(loo[0].ordinal, 0u);
}

TEST(KnnTest, MajorityVoteForLargerK) {
  const std::vector<SparseVector> x{vec(2, {{0, 1.0}}), vec(2, {{0, 1.0}, {1, 0.1}}), vec(2, {{1, 1.0}})};
  const KnnModel m(x, label_matrix(3, {{0, 1}, {0}, {2}}), 3);
  EXPECT_EQ(m.predict(vec(2, {{0, 1.0}})).labels, LabelSet{0});
}

TEST(KnnTest, OneNearestPredictionIsSomeTrainingLabelSet) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SparseVector> x;
    std::vector<LabelSet> y;
    for (int d = 0; d < 15; ++d) {
      std::map<FeatureIndex, double> m;
      for (int i = 0; i < 3; ++i) m[static_cast<FeatureIndex>(rng() % 10)] = 1.0 + static_cast<double>(rng() % 3);
      x.push_back(vec(10, m));
      LabelSet s{static_cast<LabelIndex>(rng() % 6)};
      if (rng() % 2 == 0) s.push_back(6);
      y.push_back(s);
    }
    const KnnModel model(x, label_matrix(7, y));
    for (int q = 0; q < 10; ++q) {
      std::map<FeatureIndex, double> m;
      m[static_cast<FeatureIndex>(rng() % 10)] = 1.0;
      const auto labels = model.predict(vec(10, m)).labels;
      EXPECT_NE(std::find(y.begin(), y.end(), labels), y.end());
    }
  }
}

TEST(KnnTest, ScaleInvariantRanking) {
  const std::vector<SparseVector> x{vec(3, {{0, 1.0}, {1, 2.0}}), vec(3, {{1, 1.0}, {2, 1.0}}), vec(3, {{2, 3.0}})};
  const KnnIndex index(x);
  const auto q = vec(3, {{0, 0.3}, {2, 0.7}});
  const auto scaled = q.transformed([](FeatureIndex, double w) { return 17.5 * w; });
  const auto a = index.nearest(q, 3);
  const auto b = index.nearest(scaled, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].ordinal, b[i].ordinal);
    EXPECT_NEAR(a[i].similarity, b[i].similarity, 1e-12);
  }
}

TEST(RocchioTest, CentroidEqualToQueryRanksFirst) {
  const auto m = RocchioModel::fit(std::vector<SparseVector>{vec(2, {{0, 1.0}})}, label_matrix(1, {{0}}));
  const auto r = m.rank(vec(2, {{0, 1.0}}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].label, 0u);
  EXPECT_NEAR(r[0].score, 1.0, 1e-12);
}

TEST(RocchioTest, OrthogonalCentroidScoresZero) {
  const RocchioModel m({vec(2, {{0, 1.0}}), vec(2, {{1, 1.0}})});
  const auto r = m.rank(vec(2, {{0, 1.0}}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].label, 1u);
  EXPECT_EQ(r[1].score, 0.0);
}

TEST(RocchioTest, HandComputedOrdering) {
  // Centroids (1,0), (1,1)/2 -> (0.5,0.5), (0,1); query (2,1).
  const std::vector<SparseVector> x{vec(2, {{0, 1.0}}), vec(2, {{1, 1.0}})};
  const auto m = RocchioModel::fit(x, label_matrix(3, {{0, 1}, {1, 2}}));
  EXPECT_NEAR(m.centroid(1).at(0), 0.5, 1e-15);
  const auto r = m.rank(vec(2, {{0, 2.0}, {1, 1.0}}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].label, 1u);  // cos = 3 / (sqrt5 * sqrt2) = 0.9487
  EXPECT_EQ(r[1].label, 0u);  // cos = 2 / sqrt5 = 0.8944
  EXPECT_EQ(r[2].label, 2u);  // cos = 1 / sqrt5 = 0.4472
  EXPECT_NEAR(r[0].score, 3.0 / std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(r[2].score, 1.0 / std::sqrt(5.0), 1e-12);
}

TEST(RocchioTest, ScaleInvariantRanking) {
  const std::vector<SparseVector> x{vec(3, {{0, 1.0}}), vec(3, {{1, 1.0}, {2, 2.0}}), vec(3, {{2, 1.0}})};
  const auto m = RocchioModel::fit(x, label_matrix(3, {{0}, {1, 2}, {2}}));
  const auto q = vec(3, {{0, 0.2}, {1, 0.5}, {2, 0.1}});
  const auto a = m.rank(q);
  const auto b = m.rank(q.transformed([](FeatureIndex, double w) { return 0.01 * w; }));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].label, b[i].label);
}

TEST(RocchioTest, EmptyTrainingSetIsAnError) {
  EXPECT_THROW(RocchioModel::fit(std::vector<SparseVector>{}, label_matrix(1, {})), Error);
}

}  // namespace
}  // namespace semannot
