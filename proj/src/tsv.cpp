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

#include "taxoenrich/tsv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "taxoenrich/error.hpp"
#include "taxoenrich/text.hpp"

namespace taxoenrich::tsv {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// Calls fn(fields, lineno) for each non-blank line.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(split(line, '\t'), lineno);
  }
}

std::ifstream open(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError(std::string("cannot open ") + what + " file '" + path + "'");
  return in;
}

int parse_label(const std::string& s, const std::string& source, std::size_t lineno) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw ParseError(source, lineno, "label must be 0 or 1, got '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_dataset(std::ostream& out, std::span<const OrphanEntry> dataset) {
  for (const auto& e : dataset) {
    out << e.word << '\t' << pos_code(e.pos) << '\t';
    for (std::size_t i = 0; i < e.gold.size(); ++i) out << (i ? "," : "") << e.gold[i].value;
    out << '\n';
  }
}

std::vector<OrphanEntry> read_dataset(std::istream& in, const std::string& source) {
  std::vector<OrphanEntry> out;
  for_each_row(in, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 3) throw ParseError(source, lineno, "expected 3 tab-separated fields");
    OrphanEntry e;
    e.word = f[0];
    const auto pos = parse_pos(f[1]);
    if (!pos) throw ParseError(source, lineno, "unsupported pos '" + f[1] + "'");
    e.pos = *pos;
    for (auto& id : split(f[2], ',')) {
      if (!id.empty()) e.gold.emplace_back(std::move(id));
    }
    if (e.word.empty() || e.gold.empty()) throw ParseError(source, lineno, "empty word or gold set");
    std::sort(e.gold.begin(), e.gold.end());
    e.gold.erase(std::unique(e.gold.begin(), e.gold.end()), e.gold.end());
    out.push_back(std::move(e));
  });
  return out;
}

std::vector<OrphanEntry> read_dataset(const std::string& path) {
  auto in = open(path, "dataset");
  return read_dataset(in, path);
}

void write_pairs(std::ostream& out, std::span<const TrainingPair> pairs) {
  for (const auto& p : pairs) {
    out << p.word << '\t' << p.candidate.value << '\t' << static_cast<int>(p.label) << '\n';
  }
}

std::vector<TrainingPair> read_pairs(std::istream& in, const std::string& source) {
  std::vector<TrainingPair> out;
  for_each_row(in, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 3) throw ParseError(source, lineno, "expected 3 tab-separated fields");
    out.push_back({f[0], SynsetId(f[1]), static_cast<Label>(parse_label(f[2], source, lineno)),
                   std::nullopt});
  });
  return out;
}

void write_predictions(std::ostream& out, const std::string& word,
                       std::span<const ScoredCandidate> ranked, bool explain) {
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out << word << '\t' << (i + 1) << '\t' << ranked[i].synset.value << '\t'
        << format_double(ranked[i].score);
    if (explain) {
      out << '\t';
      for (std::size_t j = 0; j < ranked[i].provenance.size(); ++j) {
        out << (j ? "," : "") << ranked[i].provenance[j];
      }
    }
    out << '\n';
  }
}

PredictionTable read_predictions(std::istream& in, const std::string& source) {
  std::map<std::string, std::vector<std::pair<long, SynsetId>>> rows;
  for_each_row(in, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() < 4) throw ParseError(source, lineno, "expected at least 4 tab-separated fields");
    long rank = 0;
    const auto res = std::from_chars(f[1].data(), f[1].data() + f[1].size(), rank);
    if (res.ec != std::errc{} || res.ptr != f[1].data() + f[1].size() || rank < 1) {
      throw ParseError(source, lineno, "rank must be a positive integer");
    }
    rows[text::normalize(f[0])].emplace_back(rank, SynsetId(f[2]));
  });
  PredictionTable table;
  for (auto& [word, ranked] : rows) {
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& ids = table[word];
    for (auto& r : ranked) ids.push_back(std::move(r.second));
  }
  return table;
}

PredictionTable read_predictions(const std::string& path) {
  auto in = open(path, "predictions");
  return read_predictions(in, path);
}

RelevanceTable read_relevance(const std::string& path) {
  auto in = open(path, "relevance");
  RelevanceTable table;
  for_each_row(in, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 3) throw ParseError(path, lineno, "expected 3 tab-separated fields");
    auto& rel = table[text::normalize(f[0])];
    if (parse_label(f[2], path, lineno) == 1) rel.insert(SynsetId(f[1]));
  });
  return table;
}

}  // namespace taxoenrich::tsv
