// Copyright 2026 The FieldSense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fieldsense/pipeline.h"

#include <gtest/gtest.h>

#include "fieldsense/synthetic.h"
#include "oracles.h"
#include "test_support.h"

namespace fieldsense {
namespace {

std::vector<int> bits_of(const FeatureVector& v) {
  std::vector<int> out(v.width());
  for (std::size_t i = 0; i < v.width(); ++i) out[i] = v.test(i);
  return out;
}

TEST(TrainingModeTest, Parses) {
  EXPECT_EQ(parse_training_mode("multiclass"), std::nullopt);
  EXPECT_EQ(parse_training_mode("binary:email"), "email");
  EXPECT_THROW(parse_training_mode("binary:"), Error);
  EXPECT_THROW(parse_training_mode("regression"), Error);
  EXPECT_THROW(parse_training_mode(""), Error);
}

TEST(FitTest, VocabularyComesFromTrainingRowsOnly) {
  std::vector<DatasetRow> train = {
      {{"Email", "email", "", "email", "https://a.example/"}, "email"},
      {{"Phone", "phone", "", "tel", "https://a.example/"}, "phone"}};
  TrainingOptions options;
  options.params.tree_count = 2;
  const ForestModel model = fit(train, options);
  EXPECT_FALSE(model.vocabulary.index(Channel::kName, "zipcode"));
  EXPECT_TRUE(model.vocabulary.index(Channel::kName, "email"));
  EXPECT_EQ(model.class_names, (std::vector<std::string>{"email", "phone"}));
  EXPECT_EQ(model.model_version, content_version(model));
}

TEST(FitTest, ExplicitModelVersionIsKept) {
  const auto rows = gen_synthetic(ClassProfile::defaults(), 50, 0.0, 1);
  TrainingOptions options;
  options.params.tree_count = 1;
  options.model_version = "release-3";
  EXPECT_EQ(fit(rows, options).model_version, "release-3");
}

TEST(FitTest, BinaryLayoutAndProjection) {
  const auto rows = prepare_rows(gen_synthetic(ClassProfile::defaults(), 200, 0.1, 2),
                                 std::string("email"));
  TrainingOptions options;
  options.binary_target = "email";
  options.params.tree_count = 3;
  const ForestModel model = fit(rows, options);
  EXPECT_EQ(model.mode, ForestMode::kBinary);
  EXPECT_EQ(model.class_names, (std::vector<std::string>{"email", "other"}));
  EXPECT_EQ(project_class(model, "email"), "email");
  EXPECT_EQ(project_class(model, "password"), "other");
  EXPECT_EQ(project_class(model, "unknown"), "other");
}

TEST(FitTest, EmptyRowsThrow) { EXPECT_THROW(fit({}, TrainingOptions{}), EmptyTrainingSetError); }

// The nine-row fixture in binary:email mode at seed 7. Each holdout answer is
// confirmed with the traversal oracle before the accuracy is asserted.
TEST(TrainAndEvaluateTest, LoginFormsBinaryEmailSeedSeven) {
  const auto rows = load_csv(testing::read_fixture("login_forms.csv"));
  TrainingOptions options;
  options.binary_target = "email";
  options.params.seed = 7;
  const TrainingRun run = train_and_evaluate(rows, options);
  EXPECT_EQ(run.split.train.size(), 7u);
  ASSERT_EQ(run.split.test.size(), 2u);
  for (const DatasetRow& row : run.split.test) {
    const auto scored =
        oracle::predict(run.model, bits_of(encode(row.features, run.model.vocabulary)));
    EXPECT_EQ(scored.class_name, row.target);
  }
  EXPECT_DOUBLE_EQ(run.holdout.micro_accuracy, 1.0);
  EXPECT_DOUBLE_EQ(run.holdout.macro_precision, 1.0);
}

TEST(TrainAndEvaluateTest, GoldenModelMatchesRetraining) {
  const auto rows = load_csv(testing::read_fixture("login_forms.csv"));
  TrainingOptions options;
  options.binary_target = "email";
  options.params.seed = 7;
  const TrainingRun run = train_and_evaluate(rows, options);
  EXPECT_EQ(save(run.model), testing::read_fixture("login_forms_model.json"));
}

TEST(TrainAndEvaluateTest, SyntheticThousandRowsMeetsPrecisionFloor) {
  const auto rows = gen_synthetic(ClassProfile::defaults(), 1000, 0.1, 7);
  TrainingOptions options;
  options.params.seed = 1;
  const TrainingRun run = train_and_evaluate(rows, options);
  EXPECT_GE(run.holdout.macro_precision, 0.9);
}

TEST(PredictorTest, RulesPredictorProjectsAndFallsBack) {
  const auto rows = prepare_rows(gen_synthetic(ClassProfile::defaults(), 100, 0.0, 3),
                                 std::string("email"));
  TrainingOptions options;
  options.binary_target = "email";
  options.params.tree_count = 2;
  const ForestModel model = fit(rows, options);
  const Predictor rules = rules_predictor(RuleSet::defaults(), model);
  EXPECT_EQ(rules({"Email", "email", "", "email", "https://x.example/"}), "email");
  EXPECT_EQ(rules({"Password", "pw", "", "password", "https://x.example/"}), "other");
  EXPECT_EQ(rules({"", "fav_color", "", "text", "https://x.example/"}), "other");

  const ForestModel multi = fit(gen_synthetic(ClassProfile::defaults(), 100, 0.0, 3),
                                TrainingOptions{});
  EXPECT_EQ(rules_predictor(RuleSet::defaults(), multi)(
                {"", "fav_color", "", "text", "https://x.example/"}),
            "unknown");
}

}  // namespace
}  // namespace fieldsense
