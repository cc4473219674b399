/*
 * Copyright 2026 The taxoenrich Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace taxoenrich {

inline constexpr std::size_t kFeatureCount = 5;

// (in Wiktionary hypernyms, in Wiktionary synonyms, in definition,
//  mean cosine to Wiktionary hypernyms, weighted-similarity score)
using FeatureVector = std::array<double, kFeatureCount>;

struct LabeledExample {
  FeatureVector features{};
  int label = 0;  // 0 or 1
};

// L2-regularized logistic regression over standardized features.
struct LRModel {
  FeatureVector weights{};
  double bias = 0.0;
  double l2_lambda = 0.0;
  FeatureVector mean{};
  FeatureVector sd{1.0, 1.0, 1.0, 1.0, 1.0};

  double logit(const FeatureVector& f) const;
  // sigmoid(logit), kept strictly inside (0, 1).
  double predict(const FeatureVector& f) const;

  // Text format: "lr-model v1", l2_lambda, weights + bias, means, sds.
  void save(std::ostream& out) const;
  static LRModel load(std::istream& in, const std::string& source = "<stream>");
  static LRModel load(const std::string& path);

  friend bool operator==(const LRModel&, const LRModel&) = default;
};

double sigmoid(double z);

// Parameter vector layout used by the objective: five weights then the bias.
inline constexpr std::size_t kParamCount = kFeatureCount + 1;
using ParamVector = std::array<double, kParamCount>;

// Mean log-loss plus l2_lambda * ||w||^2 (bias unpenalized) over a fixed,
// already standardized design matrix.
class LogisticObjective {
 public:
  LogisticObjective(std::vector<FeatureVector> z, std::vector<int> labels, double l2_lambda);

  double value(const ParamVector& theta) const;
  double value_and_gradient(const ParamVector& theta, ParamVector& grad) const;
  std::size_t size() const noexcept { return z_.size(); }

 private:
  std::vector<FeatureVector> z_;
  std::vector<int> y_;
  double lambda_;
};

struct TrainOptions {
  double l2_lambda = 1e-3;
  std::size_t max_iters = 1000;
  double tol = 1e-6;
};

struct TrainReport {
  std::size_t iterations = 0;
  double final_loss = 0.0;
  double grad_inf_norm = 0.0;
  bool converged = false;
  std::vector<double> loss_history;  // loss after each accepted step, starting at theta = 0
};

struct TrainResult {
  LRModel model;
  TrainReport report;
};

// Full-batch gradient descent with Armijo backtracking from zero weights.
// Throws InputError if only one class is present, Error on a non-finite loss.
TrainResult train_lr(std::span<const LabeledExample> examples, const TrainOptions& options);

// Per-feature mean and population standard deviation; zero deviations are
// replaced by 1 so that constant features standardize to 0.
void fit_standardization(std::span<const LabeledExample> examples, FeatureVector& mean,
                         FeatureVector& sd);

}  // namespace taxoenrich
