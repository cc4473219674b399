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

#include "taxoenrich/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "taxoenrich/disjoint_set.hpp"
#include "taxoenrich/error.hpp"
#include "taxoenrich/text.hpp"

namespace taxoenrich {

std::optional<Pos> parse_pos(std::string_view s) {
  if (s == "n" || s == "noun") return Pos::noun;
  if (s == "v" || s == "verb") return Pos::verb;
  return std::nullopt;
}

std::string_view pos_code(Pos pos) { return pos == Pos::noun ? "n" : "v"; }

std::string_view pos_name(Pos pos) { return pos == Pos::noun ? "noun" : "verb"; }

std::optional<std::size_t> GoldComponents::component_of(const SynsetId& id) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (std::binary_search(components[i].begin(), components[i].end(), id)) return i;
  }
  return std::nullopt;
}

namespace {

void sort_unique(std::vector<SynsetId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

const std::vector<SynsetId>& empty_ids() {
  static const std::vector<SynsetId> kEmpty;
  return kEmpty;
}

}  // namespace

Taxonomy Taxonomy::from_synsets(std::vector<Synset> synsets) {
  Taxonomy t;
  t.synsets_ = std::move(synsets);
  t.index_.reserve(t.synsets_.size());

  for (std::size_t i = 0; i < t.synsets_.size(); ++i) {
    Synset& s = t.synsets_[i];
    if (s.id.value.empty()) throw ValidationError("synset with empty id");
    if (s.lemmas.empty()) throw ValidationError("synset '" + s.id.value + "' has no lemmas");
    if (!t.index_.emplace(s.id.value, i).second) {
      throw ValidationError("duplicate synset id '" + s.id.value + "'");
    }
    s.keys.clear();
    for (const auto& lemma : s.lemmas) {
      std::string key = text::normalize(lemma);
      if (key.empty()) throw ValidationError("synset '" + s.id.value + "' has an empty lemma");
      s.keys.push_back(std::move(key));
    }
    sort_unique(s.hypernyms);
  }

  const std::size_t n = t.synsets_.size();
  t.hyponym_count_.assign(n, 0);
  for (const Synset& s : t.synsets_) {
    for (const SynsetId& h : s.hypernyms) {
      if (h == s.id) throw ValidationError("self-loop on synset '" + s.id.value + "'");
      auto it = t.index_.find(h.value);
      if (it == t.index_.end()) {
        throw ValidationError("dangling hypernym edge '" + s.id.value + "' -> '" + h.value + "'");
      }
      ++t.hyponym_count_[it->second];
      ++t.edge_count_;
    }
  }

  // Kahn's algorithm over child -> parent edges.
  std::vector<std::uint32_t> pending = t.hyponym_count_;
  std::vector<std::size_t> queue;
  queue.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) queue.push_back(i);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const SynsetId& h : t.synsets_[queue[head]].hypernyms) {
      const std::size_t p = t.index_.at(h.value);
      if (--pending[p] == 0) queue.push_back(p);
    }
  }
  if (queue.size() != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pending[i] != 0) {
        throw ValidationError("hypernym cycle through synset '" + t.synsets_[i].id.value + "'");
      }
    }
  }

  for (const Synset& s : t.synsets_) {
    auto& by_key = t.lemma_index_[static_cast<std::size_t>(s.pos)];
    for (const auto& key : s.keys) by_key[key].push_back(s.id);
  }
  for (auto& by_key : t.lemma_index_) {
    for (auto& [key, ids] : by_key) sort_unique(ids);
  }
  return t;
}

Taxonomy Taxonomy::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open taxonomy file '" + path + "'");
  return parse(in, path);
}

Taxonomy Taxonomy::parse(std::istream& in, const std::string& source) {
  std::vector<Synset> synsets;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, lineno, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(source, lineno, "expected a JSON object");

    Synset s;
    try {
      s.id = SynsetId(obj.at("id").get<std::string>());
      const auto pos_str = obj.at("pos").get<std::string>();
      const auto pos = parse_pos(pos_str);
      if (!pos) throw ParseError(source, lineno, "unsupported pos '" + pos_str + "'");
      s.pos = *pos;
      s.lemmas = obj.at("lemmas").get<std::vector<std::string>>();
      if (obj.contains("hypernyms")) {
        for (auto& h : obj.at("hypernyms").get<std::vector<std::string>>()) {
          s.hypernyms.emplace_back(std::move(h));
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, lineno, std::string("bad field: ") + e.what());
    }
    if (s.id.value.empty()) throw ParseError(source, lineno, "empty synset id");
    if (s.lemmas.empty()) throw ParseError(source, lineno, "empty lemma list");
    auto [it, inserted] = first_line.emplace(s.id.value, lineno);
    if (!inserted) {
      throw ParseError(source, lineno, "duplicate synset id '" + s.id.value +
                                           "' (first defined on line " +
                                           std::to_string(it->second) + ")");
    }
    synsets.push_back(std::move(s));
  }
  return from_synsets(std::move(synsets));
}

void Taxonomy::serialize(std::ostream& out) const {
  for (const Synset& s : synsets_) {
    nlohmann::json obj;
    obj["id"] = s.id.value;
    obj["pos"] = std::string(pos_code(s.pos));
    obj["lemmas"] = s.lemmas;
    auto hyps = nlohmann::json::array();
    for (const auto& h : s.hypernyms) hyps.push_back(h.value);
    obj["hypernyms"] = std::move(hyps);
    out << obj.dump() << '\n';
  }
}

std::size_t Taxonomy::index_of(const SynsetId& id) const {
  auto it = index_.find(id.value);
  if (it == index_.end()) throw UnknownSynsetError(id.value);
  return it->second;
}

bool Taxonomy::contains(const SynsetId& id) const { return index_.count(id.value) != 0; }

const Synset* Taxonomy::find(const SynsetId& id) const {
  auto it = index_.find(id.value);
  return it == index_.end() ? nullptr : &synsets_[it->second];
}

const Synset& Taxonomy::at(const SynsetId& id) const { return synsets_[index_of(id)]; }

const std::vector<SynsetId>& Taxonomy::direct_hypernyms(const SynsetId& id) const {
  return at(id).hypernyms;
}

std::vector<SynsetId> Taxonomy::second_order_hypernyms(const SynsetId& id) const {
  std::vector<SynsetId> out;
  for (const SynsetId& h : direct_hypernyms(id)) {
    const auto& hh = synsets_[index_.at(h.value)].hypernyms;
    out.insert(out.end(), hh.begin(), hh.end());
  }
  sort_unique(out);
  return out;
}

std::vector<SynsetId> Taxonomy::gold_hypernyms(const SynsetId& id) const {
  std::vector<SynsetId> out = second_order_hypernyms(id);
  const auto& direct = direct_hypernyms(id);
  out.insert(out.end(), direct.begin(), direct.end());
  sort_unique(out);
  return out;
}

std::vector<SynsetId> Taxonomy::synsets_of_lemma(std::string_view word, Pos pos) const {
  return synsets_of_key(text::normalize(word), pos);
}

const std::vector<SynsetId>& Taxonomy::synsets_of_key(const std::string& key, Pos pos) const {
  const auto& by_key = lemma_index_[static_cast<std::size_t>(pos)];
  auto it = by_key.find(key);
  return it == by_key.end() ? empty_ids() : it->second;
}

bool Taxonomy::has_key(const std::string& key, Pos pos) const {
  return lemma_index_[static_cast<std::size_t>(pos)].count(key) != 0;
}

std::vector<std::string> Taxonomy::keys(Pos pos) const {
  const auto& by_key = lemma_index_[static_cast<std::size_t>(pos)];
  std::vector<std::string> out;
  out.reserve(by_key.size());
  for (const auto& kv : by_key) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SynsetId> Taxonomy::leaf_synsets(Pos pos) const {
  std::vector<SynsetId> out;
  for (std::size_t i = 0; i < synsets_.size(); ++i) {
    if (synsets_[i].pos == pos && hyponym_count_[i] == 0) out.push_back(synsets_[i].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Taxonomy::is_leaf(const SynsetId& id) const { return hyponym_count_[index_of(id)] == 0; }

std::size_t Taxonomy::synset_count(Pos pos) const {
  return static_cast<std::size_t>(std::count_if(
      synsets_.begin(), synsets_.end(), [pos](const Synset& s) { return s.pos == pos; }));
}

std::size_t Taxonomy::lemma_count(Pos pos) const {
  return lemma_index_[static_cast<std::size_t>(pos)].size();
}

GoldComponents Taxonomy::connected_components(std::span<const SynsetId> gold) const {
  std::vector<SynsetId> members(gold.begin(), gold.end());
  sort_unique(members);
  for (const auto& id : members) index_of(id);

  std::unordered_map<std::string, std::size_t> local;
  for (std::size_t i = 0; i < members.size(); ++i) local.emplace(members[i].value, i);

  DisjointSet dsu(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const SynsetId& h : direct_hypernyms(members[i])) {
      auto it = local.find(h.value);
      if (it != local.end()) dsu.unite(i, it->second);
    }
  }

  // members are sorted, so first-seen order of roots is smallest-member order
  GoldComponents result;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t root = dsu.find(i);
    auto [it, inserted] = slot.emplace(root, result.components.size());
    if (inserted) result.components.emplace_back();
    result.components[it->second].push_back(members[i]);
  }
  return result;
}

}  // namespace taxoenrich
