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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "commands.hpp"
#include "test_util.hpp"

namespace semannot {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus = dir.file("corpus.jsonl");
    thesaurus = dir.file("thesaurus.tsv");
    const auto r = run({"generate", "--out-corpus", corpus, "--out-thesaurus", thesaurus, "--docs", "80",
                        "--labels", "6", "--synonyms", "1", "--synonym-rate", "0.4", "--fulltext-mentions",
                        "2", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  std::vector<std::string> data_args() const {
    return {"--corpus", corpus, "--thesaurus", thesaurus};
  }

  std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) const {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  }

  testing::TempDir dir{"cli"};
  std::string corpus;
  std::string thesaurus;
};

TEST_F(CliTest, GenerateWritesCorpusAndThesaurus) {
  EXPECT_EQ(lines(slurp(corpus)).size(), 80u);
  EXPECT_EQ(lines(slurp(thesaurus)).size(), 6u);
  const auto first = nlohmann::json::parse(lines(slurp(corpus)).front());
  EXPECT_TRUE(first.contains("fulltext"));
  EXPECT_FALSE(first["labels"].empty());
}

TEST_F(CliTest, EvaluateWritesReports) {
  const auto json_path = dir.file("report.json");
  const auto csv_path = dir.file("report.csv");
  const auto r = run(with({"evaluate"}, with(data_args(), {"--vec", "ctf-idf", "--clf", "knn", "--out-json",
                                                           json_path, "--out-csv", csv_path})));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(slurp(json_path));
  EXPECT_EQ(report["folds"].size(), 10u);
  EXPECT_EQ(report["config"]["vectorization"], "ctf-idf");
  EXPECT_EQ(lines(slurp(csv_path)).size(), 2u);
}

TEST_F(CliTest, UnknownVectorizationExitsTwo) {
  const auto r = run(with({"evaluate"}, with(data_args(), {"--vec", "tfidf2"})));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bm25ct"), std::string::npos);
  EXPECT_NE(r.err.find("cf-idf"), std::string::npos);
}

TEST_F(CliTest, UnknownClassifierExitsTwo) {
  const auto r = run(with({"evaluate"}, with(data_args(), {"--clf", "forest"})));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("mlp-dt"), std::string::npos);
}

TEST_F(CliTest, UnknownOptionExitsTwo) { EXPECT_EQ(run({"evaluate", "--bogus"}).code, 2); }

TEST_F(CliTest, MissingCorpusFileExitsOne) {
  EXPECT_EQ(run({"evaluate", "--corpus", dir.file("nope.jsonl")}).code, 1);
}

TEST_F(CliTest, VectorizationGridHasSixRows) {
  const auto csv_path = dir.file("grid.csv");
  const auto r = run(with({"evaluate"}, with(data_args(), {"--grid", "vectorizations", "--out-csv", csv_path})));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(slurp(csv_path));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[1].rfind("title,tf-idf,knn,", 0), 0u);
  EXPECT_EQ(rows[6].rfind("title,bm25ct,knn,", 0), 0u);
}

TEST_F(CliTest, TrainThenAnnotate) {
  const auto model = dir.file("model.json");
  const auto out = dir.file("pred.jsonl");
  auto r = run(with({"train"}, with(data_args(), {"--field", "fulltext", "--vec", "bm25", "--clf", "knn",
                                                  "--knn-k", "1", "--model", model})));
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"annotate", "--model", model, "--corpus", corpus, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto gold = lines(slurp(corpus));
  const auto predicted = lines(slurp(out));
  ASSERT_EQ(gold.size(), predicted.size());
  std::size_t exact = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = nlohmann::json::parse(gold[i]);
    const auto p = nlohmann::json::parse(predicted[i]);
    EXPECT_EQ(g["id"], p["id"]);
    exact += g["labels"] == p["labels"];
  }
  EXPECT_GE(exact, 75u);
}

TEST_F(CliTest, StatsPrintsTable) {
  const auto r = run(with({"stats"}, data_args()));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Documents"), std::string::npos);
  EXPECT_NE(r.out.find("80"), std::string::npos);
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
  const auto a = dir.file("a.csv");
  const auto b = dir.file("b.csv");
  const std::vector<std::string> common = {"--vec", "bm25ct", "--clf", "lr-dt", "--seed", "11"};
  ASSERT_EQ(run(with({"evaluate"}, with(data_args(), with(common, {"--jobs", "1", "--out-csv", a})))).code, 0);
  ASSERT_EQ(run(with({"evaluate"}, with(data_args(), with(common, {"--jobs", "8", "--out-csv", b})))).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, VectorizeDumpsOneRowPerDocument) {
  const auto out = dir.file("vectors.jsonl");
  const auto r = run(with({"vectorize"}, with(data_args(), {"--vec", "cf-idf", "--out", out})));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(slurp(out)).size(), 80u);
}

}  // namespace
}  // namespace semannot
