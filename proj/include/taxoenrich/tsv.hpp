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

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "taxoenrich/diachronic.hpp"
#include "taxoenrich/eval.hpp"
#include "taxoenrich/ranking.hpp"

// Tab-separated interchange files:
//   dataset      word  pos  id1,id2,...
//   pairs        word  candidate_id  0|1
//   predictions  word  rank  synset_id  score  [provenance]
//   relevance    word  synset_id  0|1

namespace taxoenrich::tsv {

std::string format_double(double v);

void write_dataset(std::ostream& out, std::span<const OrphanEntry> dataset);
std::vector<OrphanEntry> read_dataset(std::istream& in, const std::string& source = "<stream>");
std::vector<OrphanEntry> read_dataset(const std::string& path);

void write_pairs(std::ostream& out, std::span<const TrainingPair> pairs);
std::vector<TrainingPair> read_pairs(std::istream& in, const std::string& source = "<stream>");

void write_predictions(std::ostream& out, const std::string& word,
                       std::span<const ScoredCandidate> ranked, bool explain = false);
// Rows are keyed by normalized word and ordered by rank.
PredictionTable read_predictions(std::istream& in, const std::string& source = "<stream>");
PredictionTable read_predictions(const std::string& path);

using RelevanceTable = std::map<std::string, std::set<SynsetId>>;
RelevanceTable read_relevance(const std::string& path);

}  // namespace taxoenrich::tsv
