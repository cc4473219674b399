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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace taxoenrich {

enum class Pos : std::uint8_t { noun = 0, verb = 1 };

inline constexpr std::array<Pos, 2> kAllPos = {Pos::noun, Pos::verb};

// Accepts "n"/"v" (interchange format) and "noun"/"verb".
std::optional<Pos> parse_pos(std::string_view s);
std::string_view pos_code(Pos pos);  // "n" | "v"
std::string_view pos_name(Pos pos);  // "noun" | "verb"

struct SynsetId {
  std::string value;

  SynsetId() = default;
  explicit SynsetId(std::string v) : value(std::move(v)) {}

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
  friend bool operator==(const SynsetId&, const SynsetId&) = default;
};

struct Synset {
  SynsetId id;
  Pos pos = Pos::noun;
  std::vector<std::string> lemmas;      // surface forms, as given
  std::vector<std::string> keys;        // normalized lemmas, parallel to `lemmas`
  std::vector<SynsetId> hypernyms;      // direct hypernyms, sorted, unique

  friend bool operator==(const Synset&, const Synset&) = default;
};

// Gold hypernyms partitioned into taxonomy-connected components. Each
// component is sorted; components are ordered by their smallest member.
struct GoldComponents {
  std::vector<std::vector<SynsetId>> components;

  std::size_t size() const noexcept { return components.size(); }
  bool empty() const noexcept { return components.empty(); }
  // Index of the component containing `id`, if any.
  std::optional<std::size_t> component_of(const SynsetId& id) const;

  friend bool operator==(const GoldComponents&, const GoldComponents&) = default;
};

// Immutable wordnet-style hypernym graph. Construction validates ids, edges,
// parts of speech and acyclicity; afterwards every query is const and safe to
// call from any number of threads.
class Taxonomy {
 public:
  Taxonomy() = default;

  // Throws ValidationError on duplicate ids, empty lemma lists, self loops,
  // dangling edges or cycles.
  static Taxonomy from_synsets(std::vector<Synset> synsets);

  // JSONL interchange format, one synset per line. Throws ParseError with the
  // offending line number, or ValidationError.
  static Taxonomy load(const std::string& path);
  static Taxonomy parse(std::istream& in, const std::string& source = "<stream>");
  void serialize(std::ostream& out) const;

  std::size_t size() const noexcept { return synsets_.size(); }
  std::span<const Synset> synsets() const noexcept { return synsets_; }

  bool contains(const SynsetId& id) const;
  const Synset* find(const SynsetId& id) const;
  const Synset& at(const SynsetId& id) const;  // throws UnknownSynsetError

  const std::vector<SynsetId>& direct_hypernyms(const SynsetId& id) const;
  // Hypernyms of the direct hypernyms, sorted and unique.
  std::vector<SynsetId> second_order_hypernyms(const SynsetId& id) const;
  // direct ∪ second-order, sorted and unique.
  std::vector<SynsetId> gold_hypernyms(const SynsetId& id) const;

  // Synsets of `pos` whose lemma list contains `word` after normalization.
  std::vector<SynsetId> synsets_of_lemma(std::string_view word, Pos pos) const;
  // Same lookup for an already-normalized key; returns a stored list.
  const std::vector<SynsetId>& synsets_of_key(const std::string& key, Pos pos) const;
  bool has_key(const std::string& key, Pos pos) const;
  // All normalized lemmas of `pos`, sorted.
  std::vector<std::string> keys(Pos pos) const;

  // Synsets of `pos` that no synset lists as a hypernym.
  std::vector<SynsetId> leaf_synsets(Pos pos) const;
  bool is_leaf(const SynsetId& id) const;
  std::size_t synset_count(Pos pos) const;
  std::size_t lemma_count(Pos pos) const;
  std::size_t edge_count() const noexcept { return edge_count_; }

  // Components of the undirected graph induced on `gold` by direct hypernym
  // edges. Throws UnknownSynsetError for ids not in the taxonomy.
  GoldComponents connected_components(std::span<const SynsetId> gold) const;

  friend bool operator==(const Taxonomy& a, const Taxonomy& b) {
    return a.synsets_ == b.synsets_;
  }

 private:
  std::size_t index_of(const SynsetId& id) const;

  std::vector<Synset> synsets_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::uint32_t> hyponym_count_;
  std::array<std::unordered_map<std::string, std::vector<SynsetId>>, 2> lemma_index_;
  std::size_t edge_count_ = 0;
};

}  // namespace taxoenrich

template <>
struct std::hash<taxoenrich::SynsetId> {
  std::size_t operator()(const taxoenrich::SynsetId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
