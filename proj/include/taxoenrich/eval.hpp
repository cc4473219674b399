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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxoenrich/diachronic.hpp"
#include "taxoenrich/taxonomy.hpp"

namespace taxoenrich {

// Average precision against connected gold components: a prediction is a
// hit when it falls in a component not hit before. The normalizer is the
// number of components, even when it exceeds `limit`.
// Throws std::invalid_argument for an empty component list.
double average_precision(std::span<const SynsetId> predictions, const GoldComponents& gold,
                         std::size_t limit = 10);

struct WordResult {
  std::string word;
  std::vector<SynsetId> predictions;  // ranked, deduplicated
  GoldComponents gold;
  double ap = 0.0;
};

// Mean of per-word AP. Throws std::invalid_argument on empty input.
double map_score(std::span<const WordResult> results);

// |relevant ∩ first k predictions| / k.
double precision_at_k(std::span<const SynsetId> predictions, std::span<const SynsetId> relevant,
                      std::size_t k);
// Same with per-position relevance judgements supplied externally.
double precision_at_k(std::span<const bool> judgements, std::size_t k);

enum class WordGroup { named_entity = 0, short_word = 1, other = 2 };

std::string_view group_name(WordGroup g);

// short (< 4 letters) wins over named_entity (capitalized token).
WordGroup classify_word(std::string_view word);

struct GroupStats {
  WordGroup group = WordGroup::other;
  std::size_t count = 0;
  double share = 0.0;          // percent of all words
  std::optional<double> map;   // absent for empty groups
};

// One row per group, in enum order. `labels` is parallel to `results`.
std::vector<GroupStats> group_breakdown(std::span<const WordResult> results,
                                        std::span<const WordGroup> labels);

struct SenseBucket {
  std::size_t components = 0;
  std::size_t words = 0;
  std::size_t words_with_hit = 0;  // AP > 0; only filled when results are given
};

// Histogram of orphans by number of gold components, ascending.
// `results`, when given, is parallel to `dataset`.
std::vector<SenseBucket> sense_distribution(std::span<const OrphanEntry> dataset,
                                            const Taxonomy& taxonomy,
                                            const std::vector<WordResult>* results = nullptr);

// Ranked predictions per normalized word.
using PredictionTable = std::map<std::string, std::vector<SynsetId>>;

struct Evaluation {
  std::vector<WordResult> results;  // parallel to the dataset
  std::vector<std::string> warnings;
  double map = 0.0;
};

// Scores every orphan; words without predictions score 0 and unknown
// synsets are counted as misses with a warning.
Evaluation evaluate(std::span<const OrphanEntry> dataset, const PredictionTable& predictions,
                    const Taxonomy& taxonomy, std::size_t limit = 10);

}  // namespace taxoenrich
