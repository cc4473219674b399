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

#include "taxoenrich/wiktionary.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "json.hpp"
#include "taxoenrich/diachronic.hpp"
#include "taxoenrich/error.hpp"
#include "taxoenrich/text.hpp"

namespace taxoenrich {

namespace {

void append_unique(std::vector<std::string>& items, std::vector<std::string>& keys,
                   const std::vector<std::string>& incoming) {
  for (const auto& item : incoming) {
    std::string key = text::normalize(item);
    if (key.empty() || std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    items.push_back(item);
    keys.push_back(std::move(key));
  }
}

bool any_key_in(const Synset& s, const std::vector<std::string>& keys) {
  auto listed = [&](const std::string& k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
  // Synsets built outside a Taxonomy carry no keys yet.
  if (s.keys.empty()) {
    return std::any_of(s.lemmas.begin(), s.lemmas.end(),
                       [&](const std::string& l) { return listed(text::normalize(l)); });
  }
  return std::any_of(s.keys.begin(), s.keys.end(), listed);
}

bool any_lemma_in_definition(const Synset& s, const std::vector<std::vector<std::string>>& defs) {
  for (const auto& lemma : s.lemmas) {
    const auto needle = text::word_tokens(lemma);
    for (const auto& def : defs) {
      if (contains_token_run(def, needle)) return true;
    }
  }
  return false;
}

}  // namespace

WiktionaryStore WiktionaryStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open Wiktionary file '" + path + "'");
  return parse(in, path);
}

WiktionaryStore WiktionaryStore::parse(std::istream& in, const std::string& source) {
  WiktionaryStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    WiktionaryEntry e;
    try {
      const auto obj = nlohmann::json::parse(line);
      if (!obj.is_object()) throw ParseError(source, lineno, "expected a JSON object");
      e.word = obj.at("word").get<std::string>();
      if (obj.contains("hypernyms")) e.hypernyms = obj["hypernyms"].get<std::vector<std::string>>();
      if (obj.contains("synonyms")) e.synonyms = obj["synonyms"].get<std::vector<std::string>>();
      if (obj.contains("definition") && !obj["definition"].is_null()) {
        e.definition = obj["definition"].get<std::string>();
      }
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(source, lineno, std::string("malformed entry: ") + ex.what());
    }
    if (text::normalize(e.word).empty()) throw ParseError(source, lineno, "empty word");
    store.add(std::move(e));
  }
  return store;
}

void WiktionaryStore::add(WiktionaryEntry entry) {
  const std::string key = text::normalize(entry.word);
  auto [it, inserted] = entries_.try_emplace(key);
  Indexed& ix = it->second;
  if (inserted) ix.entry.word = entry.word;
  append_unique(ix.entry.hypernyms, ix.hypernym_keys, entry.hypernyms);
  append_unique(ix.entry.synonyms, ix.synonym_keys, entry.synonyms);
  if (!entry.definition.empty()) {
    if (!ix.entry.definition.empty()) ix.entry.definition += "\n";
    ix.entry.definition += entry.definition;
    ix.definition_tokens.push_back(text::word_tokens(entry.definition));
  }
}

const WiktionaryStore::Indexed* WiktionaryStore::find(std::string_view word) const {
  auto it = entries_.find(text::normalize(word));
  return it == entries_.end() ? nullptr : &it->second;
}

bool contains_token_run(std::span<const std::string> haystack, std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

WikiFeatures wiki_features(const WiktionaryStore& store, const EmbeddingStore& embeddings,
                           std::string_view word, const Synset& candidate) {
  WikiFeatures f;
  const auto* ix = store.find(word);
  if (ix == nullptr) return f;

  f.in_hypernyms = any_key_in(candidate, ix->hypernym_keys) ? 1.0 : 0.0;
  f.in_synonyms = any_key_in(candidate, ix->synonym_keys) ? 1.0 : 0.0;
  f.in_definition = any_lemma_in_definition(candidate, ix->definition_tokens) ? 1.0 : 0.0;

  if (!ix->hypernym_keys.empty()) {
    if (const auto cand_vec = embeddings.synset_vector(candidate)) {
      double sum = 0.0;
      std::size_t used = 0;
      for (const auto& h : ix->hypernym_keys) {
        if (const auto hv = embeddings.word_vector(h)) {
          sum += cosine(*cand_vec, *hv);
          ++used;
        }
      }
      if (used > 0) f.avg_cos_to_hypernyms = sum / static_cast<double>(used);
    }
  }
  return f;
}

CoverageReport coverage_report(const WiktionaryStore& store, std::span<const OrphanEntry> dataset,
                               const Taxonomy& taxonomy) {
  CoverageReport r;
  r.orphans = dataset.size();
  for (const auto& orphan : dataset) {
    const auto* ix = store.find(orphan.word);
    if (ix == nullptr) continue;
    ++r.present;
    bool hyp = false;
    bool syn = false;
    bool def = false;
    for (const auto& id : orphan.gold) {
      const Synset* s = taxonomy.find(id);
      if (s == nullptr) continue;
      hyp = hyp || any_key_in(*s, ix->hypernym_keys);
      syn = syn || any_key_in(*s, ix->synonym_keys);
      def = def || any_lemma_in_definition(*s, ix->definition_tokens);
    }
    r.in_hypernyms += hyp;
    r.in_synonyms += syn;
    r.in_definition += def;
  }
  return r;
}

}  // namespace taxoenrich
