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

#include "taxoenrich/diachronic.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "taxoenrich/error.hpp"
#include "taxoenrich/parallel.hpp"
#include "taxoenrich/ranking.hpp"
#include "taxoenrich/text.hpp"

namespace taxoenrich {

bool DatasetRestrictions::admits(const std::string& surface) const {
  if (text::codepoint_count(surface) < min_length) return false;
  if (exclude_named_entities && text::has_capitalized_token(surface)) return false;
  if (exclude_multiword && text::is_multiword(surface)) return false;
  return true;
}

namespace {

std::string surface_form(const Taxonomy& t, const std::vector<SynsetId>& senses,
                         const std::string& key) {
  for (const SynsetId& id : senses) {
    const Synset& s = t.at(id);
    for (std::size_t i = 0; i < s.keys.size(); ++i) {
      if (s.keys[i] == key) return s.lemmas[i];
    }
  }
  return key;
}

}  // namespace

std::vector<OrphanEntry> build_dataset(const Taxonomy& older, const Taxonomy& newer, Pos pos,
                                       const DatasetRestrictions& restrictions) {
  std::vector<OrphanEntry> out;
  for (const std::string& key : newer.keys(pos)) {
    if (older.has_key(key, pos)) continue;
    const auto& senses = newer.synsets_of_key(key, pos);

    std::set<SynsetId> direct;
    for (const SynsetId& s : senses) {
      const auto& h = newer.direct_hypernyms(s);
      direct.insert(h.begin(), h.end());
    }
    if (direct.empty()) continue;
    const bool anchored = std::all_of(direct.begin(), direct.end(),
                                      [&](const SynsetId& d) { return older.contains(d); });
    if (!anchored) continue;

    std::set<SynsetId> gold(direct.begin(), direct.end());
    for (const SynsetId& d : direct) {
      for (const SynsetId& g : newer.direct_hypernyms(d)) {
        if (older.contains(g)) gold.insert(g);
      }
    }

    OrphanEntry entry;
    entry.word = surface_form(newer, senses, key);
    entry.pos = pos;
    entry.gold.assign(gold.begin(), gold.end());
    if (!restrictions.admits(entry.word)) continue;
    out.push_back(std::move(entry));
  }
  return out;
}

DatasetStatistics dataset_statistics(const Taxonomy& older, const Taxonomy& newer) {
  DatasetStatistics stats;
  for (Pos pos : kAllPos) {
    PosStatistics& p = stats.per_pos[static_cast<std::size_t>(pos)];
    p.synsets_old = older.synset_count(pos);
    p.synsets_new = newer.synset_count(pos);
    p.lemmas_old = older.lemma_count(pos);
    p.lemmas_new = newer.lemma_count(pos);
    for (const auto& key : newer.keys(pos)) {
      if (!older.has_key(key, pos)) ++p.new_lemmas;
    }
    p.dataset_size = build_dataset(older, newer, pos, DatasetRestrictions::none()).size();
  }
  return stats;
}

std::string DatasetStatistics::to_json() const {
  nlohmann::ordered_json j;
  for (Pos pos : kAllPos) {
    const PosStatistics& p = (*this)[pos];
    j[std::string(pos_name(pos)) + "s"] = {
        {"synsets_old", p.synsets_old}, {"synsets_new", p.synsets_new},
        {"lemmas_old", p.lemmas_old},   {"lemmas_new", p.lemmas_new},
        {"new_lemmas", p.new_lemmas},   {"dataset_size", p.dataset_size},
    };
  }
  return j.dump(2);
}

void DatasetStatistics::print_table(std::ostream& out) const {
  const auto& n = (*this)[Pos::noun];
  const auto& v = (*this)[Pos::verb];
  auto row = [&](const char* label, std::size_t a, std::size_t b) {
    out << std::left << std::setw(18) << label << std::right << std::setw(10) << a << std::setw(10)
        << b << '\n';
  };
  out << std::left << std::setw(18) << "" << std::right << std::setw(10) << "nouns" << std::setw(10)
      << "verbs" << '\n';
  row("synsets (old)", n.synsets_old, v.synsets_old);
  row("synsets (new)", n.synsets_new, v.synsets_new);
  row("lemmas (old)", n.lemmas_old, v.lemmas_old);
  row("lemmas (new)", n.lemmas_new, v.lemmas_new);
  row("new lemmas", n.new_lemmas, v.new_lemmas);
  row("dataset size", n.dataset_size, v.dataset_size);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased index in [0, n); std::uniform_int_distribution is not portable
// across standard libraries.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return static_cast<std::size_t>(x % bound);
  }
}

struct WordPairs {
  std::vector<TrainingPair> pairs;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t fallback = 0;
  bool skipped_oov = false;
};

}  // namespace

TrainingSet build_training_pairs(const Taxonomy& older, const EmbeddingStore& embeddings, Pos pos,
                                 const TrainingPairOptions& options) {
  if (options.negatives_per_positive < 1) throw InputError("negatives_per_positive must be >= 1");

  std::map<std::string, std::vector<SynsetId>> leaves_by_key;
  for (const SynsetId& leaf : older.leaf_synsets(pos)) {
    for (const auto& key : older.at(leaf).keys) leaves_by_key[key].push_back(leaf);
  }
  std::vector<const std::pair<const std::string, std::vector<SynsetId>>*> words;
  words.reserve(leaves_by_key.size());
  for (const auto& kv : leaves_by_key) words.push_back(&kv);

  std::vector<SynsetId> universe;
  for (const Synset& s : older.synsets()) {
    if (s.pos == pos) universe.push_back(s.id);
  }
  std::sort(universe.begin(), universe.end());

  const RankingContext ctx{older, embeddings, pos, options.k};
  std::vector<WordPairs> per_word(words.size());

  parallel_for(words.size(), options.threads, [&](std::size_t w) {
    const std::string& key = words[w]->first;
    WordPairs& out = per_word[w];
    if (!embeddings.word_vector(key)) {
      out.skipped_oov = true;
      return;
    }

    std::set<SynsetId> positives;
    for (const SynsetId& leaf : words[w]->second) {
      for (auto& h : older.gold_hypernyms(leaf)) positives.insert(std::move(h));
    }
    if (positives.empty()) return;

    std::unordered_set<SynsetId> excluded;
    for (const SynsetId& sense : older.synsets_of_key(key, pos)) {
      excluded.insert(sense);
      for (auto& h : older.gold_hypernyms(sense)) excluded.insert(std::move(h));
    }

    for (const SynsetId& p : positives) {
      out.pairs.push_back({key, p, Label::positive, std::nullopt});
    }
    out.positives = positives.size();

    std::mt19937_64 rng(splitmix64(options.seed ^ fnv1a(key)));
    const std::size_t need = options.negatives_per_positive * positives.size();

    std::vector<SynsetId> pool;
    for (auto& c : candidates_extended(key, ctx).entries) {
      if (excluded.count(c.synset) == 0) pool.push_back(std::move(c.synset));
    }
    std::unordered_set<SynsetId> chosen;
    for (std::size_t i = 0; i < pool.size() && chosen.size() < need; ++i) {
      std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
      chosen.insert(pool[i]);
      out.pairs.push_back({key, pool[i], Label::negative, std::nullopt});
    }

    // Uniform fallback: rejection sampling, then an explicit scan if the
    // eligible set turns out to be tiny.
    std::size_t rejections = 0;
    while (chosen.size() < need && rejections < 64 * need + 256 && !universe.empty()) {
      const SynsetId& c = universe[uniform_index(rng, universe.size())];
      if (excluded.count(c) != 0 || chosen.count(c) != 0) {
        ++rejections;
        continue;
      }
      chosen.insert(c);
      out.pairs.push_back({key, c, Label::negative, std::nullopt});
      ++out.fallback;
    }
    if (chosen.size() < need) {
      std::vector<SynsetId> eligible;
      for (const SynsetId& c : universe) {
        if (excluded.count(c) == 0 && chosen.count(c) == 0) eligible.push_back(c);
      }
      for (std::size_t i = 0; i < eligible.size() && chosen.size() < need; ++i) {
        std::swap(eligible[i], eligible[i + uniform_index(rng, eligible.size() - i)]);
        chosen.insert(eligible[i]);
        out.pairs.push_back({key, eligible[i], Label::negative, std::nullopt});
        ++out.fallback;
      }
    }
    out.negatives = chosen.size();
  });

  TrainingSet set;
  for (auto& w : per_word) {
    if (w.skipped_oov) {
      ++set.skipped_oov;
      continue;
    }
    if (w.pairs.empty()) continue;
    ++set.words;
    set.positives += w.positives;
    set.negatives += w.negatives;
    set.fallback_negatives += w.fallback;
    std::move(w.pairs.begin(), w.pairs.end(), std::back_inserter(set.pairs));
  }
  return set;
}

}  // namespace taxoenrich
