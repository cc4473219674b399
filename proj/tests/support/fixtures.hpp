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

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "taxoenrich/embeddings.hpp"
#include "taxoenrich/taxonomy.hpp"

namespace taxoenrich::testing {

inline SynsetId sid(const std::string& s) { return SynsetId(s); }

inline std::vector<SynsetId> ids(std::initializer_list<const char*> names) {
  std::vector<SynsetId> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

inline Synset synset(const std::string& id, std::vector<std::string> lemmas,
                     std::vector<std::string> hypernyms = {}, Pos pos = Pos::noun) {
  Synset s;
  s.id = SynsetId(id);
  s.pos = pos;
  s.lemmas = std::move(lemmas);
  for (auto& h : hypernyms) s.hypernyms.emplace_back(std::move(h));
  return s;
}

// The small old/new pair used across tests: "duck" is new under "bird".
inline Taxonomy toy_old() {
  return Taxonomy::from_synsets({synset("animal", {"animal"}), synset("bird", {"bird"}, {"animal"})});
}

inline Taxonomy toy_new() {
  return Taxonomy::from_synsets({synset("animal", {"animal"}), synset("bird", {"bird"}, {"animal"}),
                                 synset("duck", {"duck"}, {"bird"})});
}

// Six-synset taxonomy for candidate generation:
//   w1 in S1 -> H1,  w2 in S2 -> {H1, H2},  H1 -> G
// plus vectors putting w1 nearest to the orphan and w2 second.
struct RankingToy {
  Taxonomy taxonomy;
  EmbeddingStore embeddings;
};

inline RankingToy ranking_toy() {
  RankingToy t;
  t.taxonomy = Taxonomy::from_synsets({
      synset("G", {"g"}),
      synset("H1", {"h1"}, {"G"}),
      synset("H2", {"h2"}),
      synset("S1", {"w1"}, {"H1"}),
      synset("S2", {"w2"}, {"H1", "H2"}),
      synset("Z", {"zzz"}),
  });
  // cos(orphan, .): w1 0.954, w2 0.8, h1 0.314, h2 0.105, g 0
  t.embeddings = EmbeddingStore::from_rows(
      3, {{"orphan", {1.0f, 0.0f, 0.0f}},
          {"w1", {0.95f, 0.3f, 0.0f}},
          {"w2", {0.8f, 0.6f, 0.0f}},
          {"h1", {0.3f, 0.1f, 0.9f}},
          {"h2", {0.1f, 0.3f, 0.9f}},
          {"g", {0.0f, 1.0f, 0.2f}}});
  return t;
}

// Random DAG on `n` nodes named n00..: edges only go from higher to lower
// index, so acyclicity holds by construction.
inline Taxonomy random_dag(std::mt19937_64& rng, std::size_t n, double edge_p) {
  std::bernoulli_distribution edge(edge_p);
  std::vector<Synset> out;
  auto name = [](std::size_t i) {
    std::string s = "n" + std::to_string(i);
    if (i < 10) s.insert(1, "0");
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> hyper;
    for (std::size_t j = 0; j < i; ++j) {
      if (edge(rng)) hyper.push_back(name(j));
    }
    out.push_back(synset(name(i), {"lemma" + std::to_string(i)}, hyper));
  }
  return Taxonomy::from_synsets(std::move(out));
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("taxoenrich-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& contents) const {
    const std::string p = file(name);
    std::ofstream(p, std::ios::binary) << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string serialize(const Taxonomy& t) {
  std::ostringstream os;
  t.serialize(os);
  return os.str();
}

inline std::string serialize(const EmbeddingStore& e) {
  std::ostringstream os;
  e.write(os);
  return os.str();
}

}  // namespace taxoenrich::testing
