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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxoenrich/embeddings.hpp"
#include "taxoenrich/logreg.hpp"
#include "taxoenrich/taxonomy.hpp"
#include "taxoenrich/wiktionary.hpp"

namespace taxoenrich {

enum class Method { baseline, ranking, ranking_wiki };

std::optional<Method> parse_method(std::string_view s);  // "baseline" | "ranking" | "ranking-wiki"
std::string_view method_name(Method m);

struct ScoredCandidate {
  SynsetId synset;
  double score = 0.0;
  std::size_t occurrences = 1;  // multiplicity in the merged candidate list
  double similarity = 0.0;      // cosine(orphan vector, synset vector), 0 if unresolvable
  std::vector<std::string> provenance;  // neighbor tokens, nearest first
  std::optional<FeatureVector> features;
};

// Everything candidate generation needs. The referenced stores must outlive it.
struct RankingContext {
  const Taxonomy& taxonomy;
  const EmbeddingStore& embeddings;
  Pos pos = Pos::noun;
  std::size_t k = 10;
};

// Merged candidate multiset for one orphan, one entry per distinct synset
// (sorted by id) with its occurrence count.
struct CandidatePool {
  std::string word;
  WordVector orphan;
  std::vector<Neighbor> neighbors;
  std::vector<ScoredCandidate> entries;

  const ScoredCandidate* find(const SynsetId& id) const;
};

// Hypernyms of the k nearest neighbors, ordered by the rank of the nearest
// neighbor that produced them (cosine to the orphan breaks ties), top k.
// Throws OovError when the word has no vector.
std::vector<ScoredCandidate> candidates_baseline(std::string_view word, const RankingContext& ctx);

// First-order candidates counted once per generation path, plus the direct
// hypernyms of every distinct first-order candidate.
CandidatePool candidates_extended(std::string_view word, const RankingContext& ctx);

// score = occurrences * similarity; descending, ties by synset id; top k.
std::vector<ScoredCandidate> rank_by_score(const CandidatePool& pool, std::size_t k);

FeatureVector assemble_features(const CandidatePool& pool, const ScoredCandidate& candidate,
                                const WiktionaryStore& wiktionary, const RankingContext& ctx);

// Candidates of the extended pool ordered by the model's logit; the reported
// score is the predicted probability.
std::vector<ScoredCandidate> rank_with_model(const CandidatePool& pool, const LRModel& model,
                                             const WiktionaryStore& wiktionary,
                                             const RankingContext& ctx);

// Convenience dispatch used by the CLI and tests.
std::vector<ScoredCandidate> predict(std::string_view word, Method method, const RankingContext& ctx,
                                     const LRModel* model = nullptr,
                                     const WiktionaryStore* wiktionary = nullptr);

}  // namespace taxoenrich
