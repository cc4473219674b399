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

#include "taxoenrich/eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "taxoenrich/text.hpp"

namespace taxoenrich {

double average_precision(std::span<const SynsetId> predictions, const GoldComponents& gold,
                         std::size_t limit) {
  if (gold.empty()) throw std::invalid_argument("average_precision: no gold components");
  std::vector<bool> hit(gold.size(), false);
  const std::size_t n = std::min(limit, predictions.size());
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = gold.component_of(predictions[i]);
    if (!c || hit[*c]) continue;
    hit[*c] = true;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(gold.size());
}

double map_score(std::span<const WordResult> results) {
  if (results.empty()) throw std::invalid_argument("map_score: no results");
  double sum = 0.0;
  for (const auto& r : results) sum += r.ap;
  return sum / static_cast<double>(results.size());
}

double precision_at_k(std::span<const SynsetId> predictions, std::span<const SynsetId> relevant,
                      std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision_at_k: k must be >= 1");
  std::unordered_set<SynsetId> rel(relevant.begin(), relevant.end());
  std::unordered_set<SynsetId> counted;
  const std::size_t n = std::min(k, predictions.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (rel.count(predictions[i]) != 0) counted.insert(predictions[i]);
  }
  return static_cast<double>(counted.size()) / static_cast<double>(k);
}

double precision_at_k(std::span<const bool> judgements, std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision_at_k: k must be >= 1");
  const std::size_t n = std::min(k, judgements.size());
  const auto correct = std::count(judgements.begin(), judgements.begin() + static_cast<long>(n), true);
  return static_cast<double>(correct) / static_cast<double>(k);
}

std::string_view group_name(WordGroup g) {
  switch (g) {
    case WordGroup::named_entity:
      return "named_entity";
    case WordGroup::short_word:
      return "short";
    case WordGroup::other:
      return "other";
  }
  return "other";
}

WordGroup classify_word(std::string_view word) {
  if (text::letter_count(word) < 4) return WordGroup::short_word;
  if (text::has_capitalized_token(word)) return WordGroup::named_entity;
  return WordGroup::other;
}

std::vector<GroupStats> group_breakdown(std::span<const WordResult> results,
                                        std::span<const WordGroup> labels) {
  if (labels.size() != results.size()) {
    throw std::invalid_argument("group_breakdown: one label per result required");
  }
  std::array<double, 3> sum{};
  std::array<std::size_t, 3> count{};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto g = static_cast<std::size_t>(labels[i]);
    sum[g] += results[i].ap;
    ++count[g];
  }
  std::vector<GroupStats> out;
  for (WordGroup g : {WordGroup::named_entity, WordGroup::short_word, WordGroup::other}) {
    const auto i = static_cast<std::size_t>(g);
    GroupStats s;
    s.group = g;
    s.count = count[i];
    s.share = results.empty() ? 0.0
                              : 100.0 * static_cast<double>(count[i]) /
                                    static_cast<double>(results.size());
    if (count[i] > 0) s.map = sum[i] / static_cast<double>(count[i]);
    out.push_back(s);
  }
  return out;
}

std::vector<SenseBucket> sense_distribution(std::span<const OrphanEntry> dataset,
                                            const Taxonomy& taxonomy,
                                            const std::vector<WordResult>* results) {
  if (results != nullptr && results->size() != dataset.size()) {
    throw std::invalid_argument("sense_distribution: results must be parallel to the dataset");
  }
  std::map<std::size_t, SenseBucket> buckets;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::size_t m = taxonomy.connected_components(dataset[i].gold).size();
    SenseBucket& b = buckets[m];
    b.components = m;
    ++b.words;
    if (results != nullptr && (*results)[i].ap > 0) ++b.words_with_hit;
  }
  std::vector<SenseBucket> out;
  for (auto& [m, b] : buckets) out.push_back(b);
  return out;
}

Evaluation evaluate(std::span<const OrphanEntry> dataset, const PredictionTable& predictions,
                    const Taxonomy& taxonomy, std::size_t limit) {
  Evaluation ev;
  ev.results.reserve(dataset.size());
  for (const auto& entry : dataset) {
    WordResult r;
    r.word = entry.word;
    r.gold = taxonomy.connected_components(entry.gold);
    auto it = predictions.find(text::normalize(entry.word));
    if (it != predictions.end()) {
      std::unordered_set<SynsetId> seen;
      for (const SynsetId& id : it->second) {
        if (!seen.insert(id).second) continue;
        if (!taxonomy.contains(id)) {
          ev.warnings.push_back("word '" + entry.word + "': unknown synset '" + id.value +
                                "' scored as a miss");
        }
        r.predictions.push_back(id);
      }
    }
    r.ap = average_precision(r.predictions, r.gold, limit);
    ev.results.push_back(std::move(r));
  }
  if (!ev.results.empty()) ev.map = map_score(ev.results);
  return ev;
}

}  // namespace taxoenrich
