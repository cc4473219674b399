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

#include "taxoenrich/logreg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "taxoenrich/error.hpp"

namespace taxoenrich {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LRModel::logit(const FeatureVector& f) const {
  double z = bias;
  for (std::size_t j = 0; j < kFeatureCount; ++j) z += weights[j] * ((f[j] - mean[j]) / sd[j]);
  return z;
}

double LRModel::predict(const FeatureVector& f) const {
  constexpr double lo = std::numeric_limits<double>::min();
  constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::clamp(sigmoid(logit(f)), lo, hi);
}

namespace {

void write_numbers(std::ostream& out, std::span<const double> xs) {
  char buf[32];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto res = std::to_chars(buf, buf + sizeof buf, xs[i]);
    if (i) out << ' ';
    out << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
  }
  out << '\n';
}

std::vector<double> read_numbers(std::istream& in, const std::string& source, std::size_t line,
                                 std::size_t expected) {
  std::string text;
  if (!std::getline(in, text)) throw ParseError(source, line, "unexpected end of model file");
  std::istringstream fields(text);
  std::vector<double> out;
  std::string field;
  while (fields >> field) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
      throw ParseError(source, line, "bad number '" + field + "'");
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw ParseError(source, line,
                     "expected " + std::to_string(expected) + " numbers, got " +
                         std::to_string(out.size()));
  }
  return out;
}

}  // namespace

void LRModel::save(std::ostream& out) const {
  out << "lr-model v1\n";
  write_numbers(out, std::span<const double>(&l2_lambda, 1));
  std::array<double, kParamCount> wb{};
  std::copy(weights.begin(), weights.end(), wb.begin());
  wb[kFeatureCount] = bias;
  write_numbers(out, wb);
  write_numbers(out, mean);
  write_numbers(out, sd);
}

LRModel LRModel::load(std::istream& in, const std::string& source) {
  std::string magic;
  if (!std::getline(in, magic) || magic != "lr-model v1") {
    throw ParseError(source, 1, "missing 'lr-model v1' header");
  }
  LRModel m;
  m.l2_lambda = read_numbers(in, source, 2, 1)[0];
  const auto wb = read_numbers(in, source, 3, kParamCount);
  std::copy_n(wb.begin(), kFeatureCount, m.weights.begin());
  m.bias = wb[kFeatureCount];
  const auto mean = read_numbers(in, source, 4, kFeatureCount);
  const auto sd = read_numbers(in, source, 5, kFeatureCount);
  std::copy(mean.begin(), mean.end(), m.mean.begin());
  std::copy(sd.begin(), sd.end(), m.sd.begin());
  for (double s : m.sd) {
    if (!(s > 0)) throw ParseError(source, 5, "standard deviations must be positive");
  }
  return m;
}

LRModel LRModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  return load(in, path);
}

LogisticObjective::LogisticObjective(std::vector<FeatureVector> z, std::vector<int> labels,
                                     double l2_lambda)
    : z_(std::move(z)), y_(std::move(labels)), lambda_(l2_lambda) {}

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

double LogisticObjective::value(const ParamVector& theta) const {
  double loss = 0.0;
  for (std::size_t i = 0; i < z_.size(); ++i) {
    double s = theta[kFeatureCount];
    for (std::size_t j = 0; j < kFeatureCount; ++j) s += theta[j] * z_[i][j];
    // -log p(y | s) = softplus(s) - y s
    loss += softplus(s) - (y_[i] ? s : 0.0);
  }
  loss /= static_cast<double>(z_.size());
  double penalty = 0.0;
  for (std::size_t j = 0; j < kFeatureCount; ++j) penalty += theta[j] * theta[j];
  return loss + lambda_ * penalty;
}

double LogisticObjective::value_and_gradient(const ParamVector& theta, ParamVector& grad) const {
  grad.fill(0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < z_.size(); ++i) {
    double s = theta[kFeatureCount];
    for (std::size_t j = 0; j < kFeatureCount; ++j) s += theta[j] * z_[i][j];
    loss += softplus(s) - (y_[i] ? s : 0.0);
    const double r = sigmoid(s) - y_[i];
    for (std::size_t j = 0; j < kFeatureCount; ++j) grad[j] += r * z_[i][j];
    grad[kFeatureCount] += r;
  }
  const double inv_n = 1.0 / static_cast<double>(z_.size());
  loss *= inv_n;
  for (double& g : grad) g *= inv_n;
  double penalty = 0.0;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    penalty += theta[j] * theta[j];
    grad[j] += 2.0 * lambda_ * theta[j];
  }
  return loss + lambda_ * penalty;
}

void fit_standardization(std::span<const LabeledExample> examples, FeatureVector& mean,
                         FeatureVector& sd) {
  mean.fill(0.0);
  sd.fill(0.0);
  const double n = static_cast<double>(examples.size());
  for (const auto& e : examples) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) mean[j] += e.features[j];
  }
  for (double& m : mean) m /= n;
  for (const auto& e : examples) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      const double d = e.features[j] - mean[j];
      sd[j] += d * d;
    }
  }
  for (double& s : sd) {
    s = std::sqrt(s / n);
    if (!(s > 0)) s = 1.0;
  }
}

TrainResult train_lr(std::span<const LabeledExample> examples, const TrainOptions& options) {
  if (options.l2_lambda < 0) throw InputError("l2_lambda must be non-negative");
  std::size_t positives = 0;
  for (const auto& e : examples) {
    if (e.label != 0 && e.label != 1) throw InputError("labels must be 0 or 1");
    for (double f : e.features) {
      if (!std::isfinite(f)) throw InputError("non-finite feature value in training data");
    }
    positives += static_cast<std::size_t>(e.label);
  }
  if (positives == 0 || positives == examples.size()) {
    throw InputError("training data needs at least one positive and one negative example");
  }

  TrainResult result;
  LRModel& model = result.model;
  model.l2_lambda = options.l2_lambda;
  fit_standardization(examples, model.mean, model.sd);

  std::vector<FeatureVector> z;
  std::vector<int> y;
  z.reserve(examples.size());
  y.reserve(examples.size());
  for (const auto& e : examples) {
    FeatureVector row{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) row[j] = (e.features[j] - model.mean[j]) / model.sd[j];
    z.push_back(row);
    y.push_back(e.label);
  }
  const LogisticObjective objective(std::move(z), std::move(y), options.l2_lambda);

  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;
  ParamVector theta{};
  ParamVector grad{};
  double loss = objective.value_and_gradient(theta, grad);
  if (!std::isfinite(loss)) throw Error("non-finite training loss");
  TrainReport& report = result.report;
  report.loss_history.push_back(loss);

  auto inf_norm = [](const ParamVector& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };

  double step = 1.0;
  std::size_t iter = 0;
  while (iter < options.max_iters && inf_norm(grad) >= options.tol) {
    double grad_sq = 0.0;
    for (double g : grad) grad_sq += g * g;

    ParamVector trial{};
    double trial_loss = 0.0;
    bool accepted = false;
    for (; step >= kMinStep; step *= 0.5) {
      for (std::size_t j = 0; j < kParamCount; ++j) trial[j] = theta[j] - step * grad[j];
      trial_loss = objective.value(trial);
      if (std::isfinite(trial_loss) && trial_loss <= loss - kArmijo * step * grad_sq) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no descent possible at machine precision

    theta = trial;
    loss = objective.value_and_gradient(theta, grad);
    if (!std::isfinite(loss)) throw Error("non-finite training loss");
    report.loss_history.push_back(loss);
    ++iter;
    step = std::min(step * 2.0, 1e6);
  }

  std::copy_n(theta.begin(), kFeatureCount, model.weights.begin());
  model.bias = theta[kFeatureCount];
  report.iterations = iter;
  report.final_loss = loss;
  report.grad_inf_norm = inf_norm(grad);
  report.converged = report.grad_inf_norm < options.tol;
  return result;
}

}  // namespace taxoenrich
