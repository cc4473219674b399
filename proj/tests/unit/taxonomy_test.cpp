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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "taxoenrich/error.hpp"

namespace taxoenrich {
namespace {

using testing::ids;
using testing::sid;
using testing::synset;

Taxonomy parse(const std::string& s) {
  std::istringstream in(s);
  return Taxonomy::parse(in, "test.jsonl");
}

Taxonomy chain() {
  return parse(
      "{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[\"a\"],\"hypernyms\":[]}\n"
      "{\"id\":\"B\",\"pos\":\"n\",\"lemmas\":[\"b\"],\"hypernyms\":[\"A\"]}\n"
      "{\"id\":\"C\",\"pos\":\"n\",\"lemmas\":[\"c\"],\"hypernyms\":[\"B\"]}\n");
}

Taxonomy diamond() {
  return Taxonomy::from_synsets({synset("G", {"g"}), synset("P1", {"p1"}, {"G"}),
                                 synset("P2", {"p2"}, {"G"}), synset("D", {"d"}, {"P1", "P2"})});
}

TEST(TaxonomyLoad, Chain) {
  const Taxonomy t = chain();
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.edge_count(), 2u);
  EXPECT_EQ(t.synset_count(Pos::noun), 3u);
  EXPECT_EQ(t.synset_count(Pos::verb), 0u);
}

TEST(TaxonomyLoad, DanglingEdgeNamesTarget) {
  try {
    parse("{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[\"a\"],\"hypernyms\":[\"X\"]}\n");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'X'"), std::string::npos) << e.what();
  }
}

TEST(TaxonomyLoad, CycleRejected) {
  EXPECT_THROW(parse("{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[\"a\"],\"hypernyms\":[\"B\"]}\n"
                     "{\"id\":\"B\",\"pos\":\"n\",\"lemmas\":[\"b\"],\"hypernyms\":[\"A\"]}\n"),
               ValidationError);
  EXPECT_THROW(Taxonomy::from_synsets({synset("A", {"a"}, {"A"})}), ValidationError);
  EXPECT_THROW(Taxonomy::from_synsets({synset("A", {"a"}, {"C"}), synset("B", {"b"}, {"A"}),
                                       synset("C", {"c"}, {"B"})}),
               ValidationError);
}

TEST(TaxonomyLoad, MalformedLineReportsLineNumber) {
  try {
    parse("{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[\"a\"],\"hypernyms\":[]}\n"
          "\n"
          "{\"id\":\"B\",\"pos\":\"n\",\"lemmas\":[\"b\"],\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(TaxonomyLoad, RejectsDuplicatesAndUnsupportedPos) {
  try {
    parse("{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[\"a\"],\"hypernyms\":[]}\n"
          "{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[\"b\"],\"hypernyms\":[]}\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("{\"id\":\"A\",\"pos\":\"a\",\"lemmas\":[\"a\"],\"hypernyms\":[]}\n"), ParseError);
  EXPECT_THROW(parse("{\"id\":\"A\",\"pos\":\"n\",\"lemmas\":[],\"hypernyms\":[]}\n"), ParseError);
  EXPECT_THROW(parse("[1,2]\n"), ParseError);
}

TEST(TaxonomyLoad, MissingFileIsInputError) {
  EXPECT_THROW(Taxonomy::load("/nonexistent/taxonomy.jsonl"), InputError);
}

TEST(DirectHypernyms, Examples) {
  const Taxonomy c = chain();
  EXPECT_EQ(c.direct_hypernyms(sid("C")), ids({"B"}));
  EXPECT_TRUE(c.direct_hypernyms(sid("A")).empty());
  EXPECT_EQ(diamond().direct_hypernyms(sid("D")), ids({"P1", "P2"}));
  EXPECT_THROW(c.direct_hypernyms(sid("nope")), UnknownSynsetError);
}

TEST(SecondOrderHypernyms, Examples) {
  const Taxonomy c = chain();
  EXPECT_EQ(c.second_order_hypernyms(sid("C")), ids({"A"}));
  EXPECT_TRUE(c.second_order_hypernyms(sid("A")).empty());
  EXPECT_EQ(diamond().second_order_hypernyms(sid("D")), ids({"G"}));
  EXPECT_EQ(c.gold_hypernyms(sid("C")), ids({"A", "B"}));
  EXPECT_THROW(c.second_order_hypernyms(sid("nope")), UnknownSynsetError);
}

TEST(SynsetsOfLemma, LookupAndNormalization) {
  const Taxonomy t = Taxonomy::from_synsets({
      synset("duck.n.01", {"duck"}),
      synset("duck.n.02", {"Duck", "duckling"}),
      synset("duck.v.01", {"duck"}, {}, Pos::verb),
      synset("dm.n.01", {"dancing master"}),
  });
  EXPECT_EQ(t.synsets_of_lemma("duck", Pos::noun), ids({"duck.n.01", "duck.n.02"}));
  EXPECT_EQ(t.synsets_of_lemma("Duck", Pos::noun), t.synsets_of_lemma("duck", Pos::noun));
  EXPECT_EQ(t.synsets_of_lemma("DUCK", Pos::verb), ids({"duck.v.01"}));
  EXPECT_TRUE(t.synsets_of_lemma("goose", Pos::noun).empty());
  EXPECT_EQ(t.synsets_of_lemma("Dancing  Master", Pos::noun), ids({"dm.n.01"}));
  EXPECT_EQ(t.synsets_of_lemma("dancing_master", Pos::noun), ids({"dm.n.01"}));
  EXPECT_EQ(t.lemma_count(Pos::noun), 3u);  // duck, duckling, dancing_master
}

TEST(LeafSynsets, Examples) {
  EXPECT_EQ(chain().leaf_synsets(Pos::noun), ids({"C"}));
  const Taxonomy isolated = Taxonomy::from_synsets({synset("X", {"x"}), synset("Y", {"y"})});
  EXPECT_EQ(isolated.leaf_synsets(Pos::noun), ids({"X", "Y"}));
  EXPECT_EQ(diamond().leaf_synsets(Pos::noun), ids({"D"}));
  EXPECT_TRUE(chain().leaf_synsets(Pos::verb).empty());
}

TEST(ConnectedComponents, Examples) {
  const Taxonomy t = Taxonomy::from_synsets({synset("P", {"p"}), synset("A", {"a"}, {"P"}),
                                             synset("B", {"b"})});
  EXPECT_EQ(t.connected_components(ids({"A", "P"})).size(), 1u);
  EXPECT_EQ(t.connected_components(ids({"A", "B"})).size(), 2u);

  const GoldComponents d = diamond().connected_components(ids({"P1", "P2", "G"}));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.components[0], ids({"G", "P1", "P2"}));

  // Parent and grandparent-only links: B and its grandparent do not touch.
  const GoldComponents c = chain().connected_components(ids({"C", "A"}));
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.components[0], ids({"A"}));
  EXPECT_THROW(chain().connected_components(ids({"Q"})), UnknownSynsetError);
}

TEST(ConnectedComponents, ComponentLookup) {
  const GoldComponents g = diamond().connected_components(ids({"P1", "D"}));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.component_of(sid("D")), std::optional<std::size_t>(0));
  EXPECT_FALSE(g.component_of(sid("G")).has_value());
}

TEST(TaxonomyRoundTrip, SerializeThenParse) {
  const Taxonomy t = Taxonomy::from_synsets({
      synset("entity", {"entity"}),
      synset("run.v.01", {"Run", "go fast"}, {}, Pos::verb),
      synset("x", {"Caf\xC3\xA9 \"quoted\""}, {"entity"}),
  });
  const std::string text = testing::serialize(t);
  std::istringstream in(text);
  const Taxonomy back = Taxonomy::parse(in);
  EXPECT_EQ(back, t);
  EXPECT_EQ(testing::serialize(back), text);
  EXPECT_EQ(back.at(sid("run.v.01")).lemmas[1], "go fast");
}

class RandomDagTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomDagTest, Properties) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const Taxonomy t = testing::random_dag(rng, 30, 0.08);

  std::set<SynsetId> hypernym_targets;
  for (const auto& s : t.synsets()) hypernym_targets.insert(s.hypernyms.begin(), s.hypernyms.end());

  for (const auto& s : t.synsets()) {
    std::set<SynsetId> expected;
    for (const auto& h : t.direct_hypernyms(s.id)) {
      const auto& hh = t.direct_hypernyms(h);
      expected.insert(hh.begin(), hh.end());
    }
    const auto got = t.second_order_hypernyms(s.id);
    EXPECT_EQ(std::set<SynsetId>(got.begin(), got.end()), expected);
  }
  for (const auto& leaf : t.leaf_synsets(Pos::noun)) EXPECT_EQ(hypernym_targets.count(leaf), 0u);
  EXPECT_EQ(t.leaf_synsets(Pos::noun).size() + hypernym_targets.size(), t.size());

  std::istringstream in(testing::serialize(t));
  EXPECT_EQ(Taxonomy::parse(in), t);
}

TEST_P(RandomDagTest, ComponentsMatchFloodFill) {
  std::mt19937_64 rng(1000u + static_cast<std::uint64_t>(GetParam()));
  std::uniform_int_distribution<std::size_t> size_dist(1, 50);
  const Taxonomy t = testing::random_dag(rng, size_dist(rng), 0.1);
  std::vector<SynsetId> all;
  for (const auto& s : t.synsets()) all.push_back(s.id);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<std::size_t> take(1, all.size());
    const std::vector<SynsetId> gold(all.begin(), all.begin() + static_cast<long>(take(rng)));
    const GoldComponents got = t.connected_components(gold);
    EXPECT_EQ(got.components, testing::flood_fill_components(t, gold));

    // No induced edge joins two different components.
    for (std::size_t a = 0; a < got.size(); ++a) {
      for (const auto& x : got.components[a]) {
        for (const auto& h : t.direct_hypernyms(x)) {
          const auto c = got.component_of(h);
          if (c) EXPECT_EQ(*c, a);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomDagTest, ::testing::Range(0, 25));

}  // namespace
}  // namespace taxoenrich
