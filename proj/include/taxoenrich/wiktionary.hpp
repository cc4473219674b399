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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxoenrich/embeddings.hpp"
#include "taxoenrich/taxonomy.hpp"

namespace taxoenrich {

struct OrphanEntry;

struct WiktionaryEntry {
  std::string word;
  std::vector<std::string> hypernyms;
  std::vector<std::string> synonyms;
  std::string definition;
};

// Preprocessed Wiktionary pages keyed by normalized word.
class WiktionaryStore {
 public:
  struct Indexed {
    WiktionaryEntry entry;
    std::vector<std::string> hypernym_keys;  // normalized, unique
    std::vector<std::string> synonym_keys;
    std::vector<std::vector<std::string>> definition_tokens;  // one per merged definition
  };

  // JSONL: {"word", "hypernyms", "synonyms", "definition"} per line.
  static WiktionaryStore load(const std::string& path);
  static WiktionaryStore parse(std::istream& in, const std::string& source = "<stream>");

  // Merges into an existing entry: lists are unioned, definitions appended.
  void add(WiktionaryEntry entry);

  const Indexed* find(std::string_view word) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::unordered_map<std::string, Indexed> entries_;
};

struct WikiFeatures {
  double in_hypernyms = 0.0;
  double in_synonyms = 0.0;
  double in_definition = 0.0;
  double avg_cos_to_hypernyms = 0.0;

  friend bool operator==(const WikiFeatures&, const WikiFeatures&) = default;
};

WikiFeatures wiki_features(const WiktionaryStore& store, const EmbeddingStore& embeddings,
                           std::string_view word, const Synset& candidate);

// True when `needle` occurs as a contiguous run of `haystack`.
bool contains_token_run(std::span<const std::string> haystack, std::span<const std::string> needle);

struct CoverageReport {
  std::size_t orphans = 0;
  std::size_t present = 0;
  std::size_t in_hypernyms = 0;
  std::size_t in_synonyms = 0;
  std::size_t in_definition = 0;

  static double percent(std::size_t count, std::size_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
  }
  double present_pct() const { return percent(present, orphans); }
  double hypernyms_pct() const { return percent(in_hypernyms, orphans); }
  double synonyms_pct() const { return percent(in_synonyms, orphans); }
  double definition_pct() const { return percent(in_definition, orphans); }
};

// How many orphans Wiktionary knows, and how many have a gold hypernym lemma
// in each field of their entry.
CoverageReport coverage_report(const WiktionaryStore& store, std::span<const OrphanEntry> dataset,
                               const Taxonomy& taxonomy);

}  // namespace taxoenrich
