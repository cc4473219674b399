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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taxoenrich/embeddings.hpp"
#include "taxoenrich/logreg.hpp"
#include "taxoenrich/taxonomy.hpp"

namespace taxoenrich {

// A word present only in the newer taxonomy, with its gold hypernyms
// (direct and second-order) resolved against the older one.
struct OrphanEntry {
  std::string word;  // surface form from the newer taxonomy
  Pos pos = Pos::noun;
  std::vector<SynsetId> gold;  // sorted, unique, non-empty

  friend bool operator==(const OrphanEntry&, const OrphanEntry&) = default;
};

struct DatasetRestrictions {
  std::size_t min_length = 4;  // code points
  bool exclude_named_entities = false;
  bool exclude_multiword = false;

  static DatasetRestrictions none() { return {0, false, false}; }
  bool admits(const std::string& surface) const;
};

// Orphans of `pos`, sorted by normalized word. An entry is kept only when
// every direct hypernym of every sense in `newer` also exists in `older`.
std::vector<OrphanEntry> build_dataset(const Taxonomy& older, const Taxonomy& newer, Pos pos,
                                       const DatasetRestrictions& restrictions);

struct PosStatistics {
  std::size_t synsets_old = 0;
  std::size_t synsets_new = 0;
  std::size_t lemmas_old = 0;
  std::size_t lemmas_new = 0;
  std::size_t new_lemmas = 0;    // lemmas of the newer version absent from the older one
  std::size_t dataset_size = 0;  // unrestricted orphans that pass the hypernym check
};

struct DatasetStatistics {
  std::array<PosStatistics, 2> per_pos{};  // indexed by Pos

  const PosStatistics& operator[](Pos p) const { return per_pos[static_cast<std::size_t>(p)]; }
  std::string to_json() const;
  void print_table(std::ostream& out) const;
};

DatasetStatistics dataset_statistics(const Taxonomy& older, const Taxonomy& newer);

enum class Label : int { negative = 0, positive = 1 };

struct TrainingPair {
  std::string word;  // normalized lemma
  SynsetId candidate;
  Label label = Label::negative;
  std::optional<FeatureVector> features;

  friend bool operator==(const TrainingPair&, const TrainingPair&) = default;
};

struct TrainingPairOptions {
  std::size_t negatives_per_positive = 1;
  std::uint64_t seed = 0;
  std::size_t k = 10;
  unsigned threads = 1;
};

struct TrainingSet {
  std::vector<TrainingPair> pairs;
  std::size_t words = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t skipped_oov = 0;
  std::size_t fallback_negatives = 0;  // negatives drawn uniformly after candidates ran out
};

// Positives: every direct and second-order hypernym of the leaf synsets of
// `pos`, per lemma. Negatives: sampled without replacement from the lemma's
// extended candidate pool minus its gold set, then uniformly from the rest
// of the taxonomy. Seeded per word, so results ignore `threads`.
TrainingSet build_training_pairs(const Taxonomy& older, const EmbeddingStore& embeddings, Pos pos,
                                 const TrainingPairOptions& options);

}  // namespace taxoenrich
