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

#include "taxoenrich/ranking.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "taxoenrich/error.hpp"
#include "taxoenrich/text.hpp"

namespace taxoenrich {

std::optional<Method> parse_method(std::string_view s) {
  if (s == "baseline") return Method::baseline;
  if (s == "ranking") return Method::ranking;
  if (s == "ranking-wiki") return Method::ranking_wiki;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::baseline:
      return "baseline";
    case Method::ranking:
      return "ranking";
    case Method::ranking_wiki:
      return "ranking-wiki";
  }
  return "unknown";
}

const ScoredCandidate* CandidatePool::find(const SynsetId& id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const ScoredCandidate& c, const SynsetId& v) { return c.synset < v; });
  return it != entries.end() && it->synset == id ? &*it : nullptr;
}

namespace {

struct Generation {
  std::string key;
  WordVector orphan;
  std::vector<Neighbor> neighbors;
  // (neighbor rank, candidate) for every first-order path, in path order
  std::vector<std::pair<std::size_t, SynsetId>> hits;
};

// The hypernym itself plus every synset of the same pos sharing one of its lemmas.
std::vector<SynsetId> associated_synsets(const Taxonomy& t, const SynsetId& hypernym, Pos pos) {
  std::vector<SynsetId> out{hypernym};
  for (const auto& key : t.at(hypernym).keys) {
    const auto& ids = t.synsets_of_key(key, pos);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Generation generate(std::string_view word, const RankingContext& ctx) {
  if (ctx.k == 0) throw std::invalid_argument("k must be >= 1");
  Generation g;
  g.key = text::normalize(word);
  auto orphan = ctx.embeddings.word_vector(g.key);
  if (!orphan) throw OovError(std::string(word));
  g.orphan = std::move(*orphan);
  g.neighbors = ctx.embeddings.nearest_neighbors(g.orphan, ctx.k, {g.key});

  for (std::size_t rank = 0; rank < g.neighbors.size(); ++rank) {
    for (const SynsetId& s : ctx.taxonomy.synsets_of_key(g.neighbors[rank].token, ctx.pos)) {
      for (const SynsetId& h : ctx.taxonomy.direct_hypernyms(s)) {
        for (auto& c : associated_synsets(ctx.taxonomy, h, ctx.pos)) g.hits.emplace_back(rank, std::move(c));
      }
    }
  }
  return g;
}

double synset_similarity(const WordVector& orphan, const SynsetId& id, const RankingContext& ctx) {
  const auto v = ctx.embeddings.synset_vector(ctx.taxonomy.at(id));
  return v ? cosine(orphan, *v) : 0.0;
}

std::vector<std::string> provenance_tokens(const std::set<std::size_t>& ranks,
                                           const std::vector<Neighbor>& neighbors) {
  std::vector<std::string> out;
  out.reserve(ranks.size());
  for (std::size_t r : ranks) out.push_back(neighbors[r].token);
  return out;
}

}  // namespace

std::vector<ScoredCandidate> candidates_baseline(std::string_view word, const RankingContext& ctx) {
  const Generation g = generate(word, ctx);

  struct Acc {
    std::size_t first_rank;
    std::size_t count = 0;
    std::set<std::size_t> ranks;
  };
  std::map<SynsetId, Acc> acc;
  for (const auto& [rank, id] : g.hits) {
    auto [it, inserted] = acc.try_emplace(id, Acc{rank, 0, {}});
    it->second.first_rank = std::min(it->second.first_rank, rank);
    ++it->second.count;
    it->second.ranks.insert(rank);
  }

  struct Row {
    ScoredCandidate cand;
    std::size_t first_rank;
  };
  std::vector<Row> rows;
  rows.reserve(acc.size());
  for (const auto& [id, a] : acc) {
    ScoredCandidate c;
    c.synset = id;
    c.occurrences = a.count;
    c.similarity = synset_similarity(g.orphan, id, ctx);
    c.score = c.similarity;
    c.provenance = provenance_tokens(a.ranks, g.neighbors);
    rows.push_back({std::move(c), a.first_rank});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.first_rank != b.first_rank) return a.first_rank < b.first_rank;
    if (a.cand.similarity != b.cand.similarity) return a.cand.similarity > b.cand.similarity;
    return a.cand.synset < b.cand.synset;
  });
  if (rows.size() > ctx.k) rows.resize(ctx.k);

  std::vector<ScoredCandidate> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.cand));
  return out;
}

CandidatePool candidates_extended(std::string_view word, const RankingContext& ctx) {
  Generation g = generate(word, ctx);

  std::map<SynsetId, std::pair<std::size_t, std::set<std::size_t>>> acc;
  for (const auto& [rank, id] : g.hits) {
    auto& slot = acc[id];
    ++slot.first;
    slot.second.insert(rank);
  }
  std::vector<std::pair<SynsetId, std::set<std::size_t>>> first_order;
  first_order.reserve(acc.size());
  for (const auto& [id, slot] : acc) first_order.emplace_back(id, slot.second);
  for (const auto& [id, ranks] : first_order) {
    for (const SynsetId& h : ctx.taxonomy.direct_hypernyms(id)) {
      auto& slot = acc[h];
      ++slot.first;
      slot.second.insert(ranks.begin(), ranks.end());
    }
  }

  CandidatePool pool;
  pool.word = std::move(g.key);
  pool.neighbors = std::move(g.neighbors);
  pool.entries.reserve(acc.size());
  for (const auto& [id, slot] : acc) {
    ScoredCandidate c;
    c.synset = id;
    c.occurrences = slot.first;
    c.similarity = synset_similarity(g.orphan, id, ctx);
    c.score = static_cast<double>(c.occurrences) * c.similarity;
    c.provenance = provenance_tokens(slot.second, pool.neighbors);
    pool.entries.push_back(std::move(c));
  }
  pool.orphan = std::move(g.orphan);
  return pool;
}

std::vector<ScoredCandidate> rank_by_score(const CandidatePool& pool, std::size_t k) {
  std::vector<ScoredCandidate> out = pool.entries;
  for (auto& c : out) c.score = static_cast<double>(c.occurrences) * c.similarity;
  std::sort(out.begin(), out.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.synset < b.synset;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

FeatureVector assemble_features(const CandidatePool& pool, const ScoredCandidate& candidate,
                                const WiktionaryStore& wiktionary, const RankingContext& ctx) {
  const WikiFeatures w =
      wiki_features(wiktionary, ctx.embeddings, pool.word, ctx.taxonomy.at(candidate.synset));
  return {w.in_hypernyms, w.in_synonyms, w.in_definition, w.avg_cos_to_hypernyms,
          static_cast<double>(candidate.occurrences) * candidate.similarity};
}

std::vector<ScoredCandidate> rank_with_model(const CandidatePool& pool, const LRModel& model,
                                             const WiktionaryStore& wiktionary,
                                             const RankingContext& ctx) {
  struct Row {
    ScoredCandidate cand;
    double logit;
  };
  std::vector<Row> rows;
  rows.reserve(pool.entries.size());
  for (const auto& entry : pool.entries) {
    Row r{entry, 0.0};
    const FeatureVector f = assemble_features(pool, entry, wiktionary, ctx);
    r.logit = model.logit(f);
    r.cand.score = model.predict(f);
    r.cand.features = f;
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.logit != b.logit) return a.logit > b.logit;
    return a.cand.synset < b.cand.synset;
  });
  if (rows.size() > ctx.k) rows.resize(ctx.k);
  std::vector<ScoredCandidate> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.cand));
  return out;
}

std::vector<ScoredCandidate> predict(std::string_view word, Method method, const RankingContext& ctx,
                                     const LRModel* model, const WiktionaryStore* wiktionary) {
  switch (method) {
    case Method::baseline:
      return candidates_baseline(word, ctx);
    case Method::ranking:
      return rank_by_score(candidates_extended(word, ctx), ctx.k);
    case Method::ranking_wiki: {
      if (model == nullptr) throw std::invalid_argument("ranking-wiki needs a trained model");
      static const WiktionaryStore kEmpty;
      return rank_with_model(candidates_extended(word, ctx), *model,
                             wiktionary ? *wiktionary : kEmpty, ctx);
    }
  }
  return {};
}

}  // namespace taxoenrich
