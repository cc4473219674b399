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

#include "taxoenrich/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "taxoenrich/atomic_file.hpp"
#include "taxoenrich/diachronic.hpp"
#include "taxoenrich/embeddings.hpp"
#include "taxoenrich/error.hpp"
#include "taxoenrich/eval.hpp"
#include "taxoenrich/logreg.hpp"
#include "taxoenrich/parallel.hpp"
#include "taxoenrich/ranking.hpp"
#include "taxoenrich/simd/kernels.hpp"
#include "taxoenrich/text.hpp"
#include "taxoenrich/tsv.hpp"
#include "taxoenrich/wiktionary.hpp"

namespace taxoenrich::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t k = 10;

  std::string old_path;
  std::string new_path;
  std::string taxonomy_path;
  std::string embeddings_path;
  std::string wiktionary_path;
  std::string dataset_path;
  std::string model_path;
  std::string predictions_path;
  std::string relevance_path;
  std::string out_path;
  std::string stats_path;
  std::string json_path;
  std::string histogram_path;
  std::string pairs_out;
  std::string oov_report;

  std::string pos = "noun";
  std::string method = "ranking";
  bool restricted = false;
  std::optional<std::size_t> min_length;
  bool exclude_ne = false;
  bool exclude_multiword = false;

  double l2 = 1e-3;
  std::size_t max_iters = 1000;
  double tol = 1e-6;
  std::size_t negatives = 1;
  std::optional<std::size_t> vocab_limit;

  bool explain = false;
  bool groups = false;
  std::optional<std::size_t> limit;
};

Pos pos_of(const RunConfig& cfg) { return *parse_pos(cfg.pos); }

EmbeddingStore load_embeddings(const RunConfig& cfg, std::ostream& err) {
  EmbeddingStore store = EmbeddingStore::load(cfg.embeddings_path, cfg.vocab_limit);
  if (store.duplicate_count() > 0) {
    err << "warning: " << store.duplicate_count()
        << " duplicate tokens in embedding file ignored (first occurrence kept)\n";
  }
  return store;
}

WiktionaryStore load_wiktionary(const RunConfig& cfg) {
  return cfg.wiktionary_path.empty() ? WiktionaryStore{} : WiktionaryStore::load(cfg.wiktionary_path);
}

void write_json(const std::string& path, const ordered_json& j) {
  write_atomically(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

// ---------------------------------------------------------------- build-dataset

int cmd_build_dataset(const RunConfig& cfg, std::ostream& out) {
  const Taxonomy older = Taxonomy::load(cfg.old_path);
  const Taxonomy newer = Taxonomy::load(cfg.new_path);

  DatasetRestrictions r = DatasetRestrictions::none();
  if (cfg.restricted) {
    r.min_length = 4;
    r.exclude_named_entities = true;
  }
  if (cfg.min_length) r.min_length = *cfg.min_length;
  r.exclude_named_entities = r.exclude_named_entities || cfg.exclude_ne;
  r.exclude_multiword = cfg.exclude_multiword;

  const Pos pos = pos_of(cfg);
  const auto dataset = build_dataset(older, newer, pos, r);
  const auto stats = dataset_statistics(older, newer);

  ordered_json j;
  j["statistics"] = ordered_json::parse(stats.to_json());
  j["dataset"] = {{"pos", std::string(pos_name(pos))},
                  {"entries", dataset.size()},
                  {"min_length", r.min_length},
                  {"exclude_named_entities", r.exclude_named_entities},
                  {"exclude_multiword", r.exclude_multiword}};

  write_atomically(cfg.out_path, [&](std::ostream& o) { tsv::write_dataset(o, dataset); });
  write_json(cfg.stats_path.empty() ? cfg.out_path + ".stats.json" : cfg.stats_path, j);

  stats.print_table(out);
  out << "wrote " << dataset.size() << ' ' << pos_name(pos) << " orphans to " << cfg.out_path << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- train

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Taxonomy older = Taxonomy::load(cfg.old_path);
  const EmbeddingStore embeddings = load_embeddings(cfg, err);
  const WiktionaryStore wiktionary = load_wiktionary(cfg);
  const Pos pos = pos_of(cfg);

  TrainingPairOptions opts;
  opts.negatives_per_positive = cfg.negatives;
  opts.seed = cfg.seed;
  opts.k = cfg.k;
  opts.threads = cfg.threads;
  TrainingSet set = build_training_pairs(older, embeddings, pos, opts);

  // Pairs are grouped by word; one candidate pool per word.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t i = 0; i < set.pairs.size();) {
    std::size_t j = i;
    while (j < set.pairs.size() && set.pairs[j].word == set.pairs[i].word) ++j;
    spans.emplace_back(i, j);
    i = j;
  }
  const RankingContext ctx{older, embeddings, pos, cfg.k};
  parallel_for(spans.size(), cfg.threads, [&](std::size_t s) {
    const auto [begin, end] = spans[s];
    const CandidatePool pool = candidates_extended(set.pairs[begin].word, ctx);
    for (std::size_t i = begin; i < end; ++i) {
      TrainingPair& p = set.pairs[i];
      if (const ScoredCandidate* c = pool.find(p.candidate)) {
        p.features = assemble_features(pool, *c, wiktionary, ctx);
      } else {
        // Gold hypernyms the generator missed are scored as a single occurrence.
        ScoredCandidate missed;
        missed.synset = p.candidate;
        missed.occurrences = 1;
        const auto v = embeddings.synset_vector(older.at(p.candidate));
        missed.similarity = v ? cosine(pool.orphan, *v) : 0.0;
        p.features = assemble_features(pool, missed, wiktionary, ctx);
      }
    }
  });

  std::vector<LabeledExample> examples;
  examples.reserve(set.pairs.size());
  for (const auto& p : set.pairs) examples.push_back({*p.features, static_cast<int>(p.label)});

  TrainOptions topts;
  topts.l2_lambda = cfg.l2;
  topts.max_iters = cfg.max_iters;
  topts.tol = cfg.tol;
  const TrainResult result = train_lr(examples, topts);

  write_atomically(cfg.model_path, [&](std::ostream& o) { result.model.save(o); });
  if (!cfg.pairs_out.empty()) {
    write_atomically(cfg.pairs_out, [&](std::ostream& o) { tsv::write_pairs(o, set.pairs); });
  }

  out << "training pairs: " << set.positives << " positive, " << set.negatives << " negative ("
      << (set.positives * cfg.negatives == set.negatives ? "balanced" : "unbalanced") << ")\n";
  out << "words: " << set.words << ", skipped (no vector): " << set.skipped_oov
      << ", uniform fallback negatives: " << set.fallback_negatives << '\n';
  out << "iterations: " << result.report.iterations
      << ", final loss: " << tsv::format_double(result.report.final_loss)
      << ", gradient inf-norm: " << tsv::format_double(result.report.grad_inf_norm)
      << (result.report.converged ? " (converged)" : " (max iterations reached)") << '\n';
  out << "wrote model to " << cfg.model_path << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- predict

int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Method method = *parse_method(cfg.method);
  if (method == Method::ranking_wiki && cfg.model_path.empty()) {
    throw InputError("--method ranking-wiki requires --model");
  }
  const Taxonomy taxonomy = Taxonomy::load(cfg.taxonomy_path);
  const auto dataset = tsv::read_dataset(cfg.dataset_path);
  const EmbeddingStore embeddings = load_embeddings(cfg, err);
  const WiktionaryStore wiktionary = load_wiktionary(cfg);
  std::optional<LRModel> model;
  if (method == Method::ranking_wiki) {
    model = LRModel::load(cfg.model_path);
    if (cfg.wiktionary_path.empty()) err << "warning: no --wiktionary given; Wiktionary features are 0\n";
  }

  struct Row {
    std::string text;
    bool oov = false;
    bool empty = false;
  };
  std::vector<Row> rows(dataset.size());
  parallel_for(dataset.size(), cfg.threads, [&](std::size_t i) {
    const RankingContext ctx{taxonomy, embeddings, dataset[i].pos, cfg.k};
    try {
      const auto ranked = predict(dataset[i].word, method, ctx, model ? &*model : nullptr, &wiktionary);
      std::ostringstream os;
      tsv::write_predictions(os, dataset[i].word, ranked, cfg.explain);
      rows[i].text = os.str();
      rows[i].empty = ranked.empty();
    } catch (const OovError&) {
      rows[i].oov = true;
    }
  });

  std::size_t oov = 0;
  std::size_t empty = 0;
  for (const auto& r : rows) {
    oov += r.oov;
    empty += r.empty;
  }
  write_atomically(cfg.out_path, [&](std::ostream& o) {
    for (const auto& r : rows) o << r.text;
  });
  write_atomically(cfg.oov_report.empty() ? cfg.out_path + ".oov" : cfg.oov_report,
                   [&](std::ostream& o) {
                     for (std::size_t i = 0; i < rows.size(); ++i) {
                       if (rows[i].oov) o << dataset[i].word << '\n';
                     }
                   });

  out << "method: " << method_name(method) << ", words: " << dataset.size() << ", no vector: " << oov
      << ", no candidates: " << empty << '\n';
  out << "wrote predictions to " << cfg.out_path << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- eval / report

ordered_json histogram_json(const std::vector<SenseBucket>& hist, bool with_hits) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : hist) {
    ordered_json row = {{"components", b.components}, {"words", b.words}};
    if (with_hits) row["words_with_hit"] = b.words_with_hit;
    arr.push_back(row);
  }
  return arr;
}

void print_histogram(std::ostream& out, const std::vector<SenseBucket>& hist, bool with_hits) {
  out << "senses (gold components) histogram:\n";
  out << std::setw(12) << "components" << std::setw(10) << "words";
  if (with_hits) out << std::setw(12) << "with hit";
  out << '\n';
  for (const auto& b : hist) {
    out << std::setw(12) << b.components << std::setw(10) << b.words;
    if (with_hits) out << std::setw(12) << b.words_with_hit;
    out << '\n';
  }
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Taxonomy taxonomy = Taxonomy::load(cfg.taxonomy_path);
  const auto dataset = tsv::read_dataset(cfg.dataset_path);
  const auto predictions = tsv::read_predictions(cfg.predictions_path);
  std::optional<tsv::RelevanceTable> relevance;
  if (!cfg.relevance_path.empty()) relevance = tsv::read_relevance(cfg.relevance_path);
  if (dataset.empty()) throw InputError("dataset is empty");

  const std::size_t limit = cfg.limit.value_or(cfg.k);
  const Evaluation ev = evaluate(dataset, predictions, taxonomy, limit);
  for (const auto& w : ev.warnings) err << "warning: " << w << '\n';

  std::vector<WordGroup> labels;
  labels.reserve(ev.results.size());
  for (const auto& r : ev.results) labels.push_back(classify_word(r.word));
  const auto groups = group_breakdown(ev.results, labels);
  const auto hist = sense_distribution(dataset, taxonomy, &ev.results);

  std::vector<double> p_at_k;
  if (relevance) {
    std::size_t judged = 0;
    p_at_k.assign(limit, 0.0);
    for (const auto& r : ev.results) {
      auto it = relevance->find(text::normalize(r.word));
      if (it == relevance->end()) continue;
      ++judged;
      const std::vector<SynsetId> rel(it->second.begin(), it->second.end());
      for (std::size_t k = 1; k <= limit; ++k) p_at_k[k - 1] += precision_at_k(r.predictions, rel, k);
    }
    for (double& p : p_at_k) p = judged ? p / static_cast<double>(judged) : 0.0;
  }

  out << "words: " << ev.results.size() << "\nMAP: " << std::fixed << std::setprecision(4) << ev.map
      << '\n';
  if (cfg.groups) {
    out << std::setw(14) << "group" << std::setw(10) << "share %" << std::setw(10) << "MAP" << '\n';
    for (const auto& g : groups) {
      out << std::setw(14) << group_name(g.group) << std::setw(10) << std::setprecision(1) << g.share
          << std::setw(10);
      if (g.map) {
        out << std::setprecision(4) << *g.map;
      } else {
        out << "-";
      }
      out << '\n';
    }
  }
  print_histogram(out, hist, true);
  for (std::size_t k = 0; k < p_at_k.size(); ++k) {
    out << "P@" << (k + 1) << ": " << std::setprecision(4) << p_at_k[k] << '\n';
  }
  out << std::defaultfloat;

  if (!cfg.json_path.empty()) {
    ordered_json j;
    j["map"] = ev.map;
    j["limit"] = limit;
    ordered_json per_group = ordered_json::array();
    for (const auto& g : groups) {
      per_group.push_back({{"group", std::string(group_name(g.group))},
                           {"count", g.count},
                           {"share", g.share},
                           {"map", g.map ? ordered_json(*g.map) : ordered_json(nullptr)}});
    }
    j["per_group"] = per_group;
    j["histogram"] = histogram_json(hist, true);
    ordered_json per_word = ordered_json::array();
    for (const auto& r : ev.results) per_word.push_back({{"word", r.word}, {"ap", r.ap}});
    j["per_word_ap"] = per_word;
    if (relevance) j["precision_at_k"] = p_at_k;
    write_json(cfg.json_path, j);
  }
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const Taxonomy older = Taxonomy::load(cfg.old_path);
  std::optional<Taxonomy> newer;
  if (!cfg.new_path.empty()) newer = Taxonomy::load(cfg.new_path);
  std::optional<std::vector<OrphanEntry>> dataset;
  if (!cfg.dataset_path.empty()) dataset = tsv::read_dataset(cfg.dataset_path);
  if (!newer && !dataset) throw InputError("report needs --new and/or --dataset");

  ordered_json j;
  if (newer) {
    const auto stats = dataset_statistics(older, *newer);
    stats.print_table(out);
    j["statistics"] = ordered_json::parse(stats.to_json());
  }
  if (dataset) {
    std::vector<SenseBucket> hist;
    const bool with_hits = !cfg.predictions_path.empty();
    if (with_hits) {
      const auto predictions = tsv::read_predictions(cfg.predictions_path);
      const Evaluation ev = evaluate(*dataset, predictions, older, cfg.limit.value_or(cfg.k));
      hist = sense_distribution(*dataset, older, &ev.results);
    } else {
      hist = sense_distribution(*dataset, older);
    }
    print_histogram(out, hist, with_hits);
    j["histogram"] = histogram_json(hist, with_hits);
    if (!cfg.histogram_path.empty()) {
      write_atomically(cfg.histogram_path, [&](std::ostream& o) {
        o << "components,words" << (with_hits ? ",words_with_hit" : "") << '\n';
        for (const auto& b : hist) {
          o << b.components << ',' << b.words;
          if (with_hits) o << ',' << b.words_with_hit;
          o << '\n';
        }
      });
    }
  }
  if (!cfg.json_path.empty()) write_json(cfg.json_path, j);
  return kExitOk;
}

int cmd_wiki_coverage(const RunConfig& cfg, std::ostream& out) {
  const WiktionaryStore store = WiktionaryStore::load(cfg.wiktionary_path);
  const auto dataset = tsv::read_dataset(cfg.dataset_path);
  const Taxonomy taxonomy = Taxonomy::load(cfg.taxonomy_path);
  const CoverageReport r = coverage_report(store, dataset, taxonomy);

  out << "orphans: " << r.orphans << '\n' << std::fixed << std::setprecision(1);
  out << "present in Wiktionary: " << r.present_pct() << "%\n";
  out << "gold lemma in hypernyms: " << r.hypernyms_pct() << "%\n";
  out << "gold lemma in synonyms: " << r.synonyms_pct() << "%\n";
  out << "gold lemma in definition: " << r.definition_pct() << "%\n" << std::defaultfloat;

  if (!cfg.json_path.empty()) {
    ordered_json j = {{"orphans", r.orphans},
                      {"present", r.present},
                      {"in_hypernyms", r.in_hypernyms},
                      {"in_synonyms", r.in_synonyms},
                      {"in_definition", r.in_definition},
                      {"present_pct", r.present_pct()},
                      {"hypernyms_pct", r.hypernyms_pct()},
                      {"synonyms_pct", r.synonyms_pct()},
                      {"definition_pct", r.definition_pct()}};
    write_json(cfg.json_path, j);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- wiring

struct Commands {
  CLI::App* build_dataset;
  CLI::App* train;
  CLI::App* predict;
  CLI::App* eval;
  CLI::App* report;
  CLI::App* wiki_coverage;
};

Commands build_app(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", cfg.config_path, "key = value file; command-line flags take precedence")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", cfg.seed, "random seed for negative sampling")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--k", cfg.k, "neighbors / candidates per word")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  const auto pos_check = CLI::IsMember({"noun", "verb"});

  Commands c{};
  c.build_dataset = app.add_subcommand("build-dataset", "diff two taxonomy versions into an orphan dataset");
  c.build_dataset->add_option("--old", cfg.old_path, "older taxonomy (JSONL)")->required()->check(CLI::ExistingFile);
  c.build_dataset->add_option("--new", cfg.new_path, "newer taxonomy (JSONL)")->required()->check(CLI::ExistingFile);
  c.build_dataset->add_option("--pos", cfg.pos, "part of speech")->check(pos_check)->capture_default_str();
  c.build_dataset->add_option("--out", cfg.out_path, "dataset TSV to write")->required();
  c.build_dataset->add_option("--stats", cfg.stats_path, "statistics JSON (default: <out>.stats.json)");
  c.build_dataset->add_flag("--restricted", cfg.restricted, "drop words shorter than 4 and named entities");
  c.build_dataset->add_option("--min-length", cfg.min_length, "minimum word length in characters");
  c.build_dataset->add_flag("--exclude-ne", cfg.exclude_ne, "drop capitalized (named-entity) words");
  c.build_dataset->add_flag("--exclude-multiword", cfg.exclude_multiword, "drop multiword expressions");

  c.train = app.add_subcommand("train", "train the logistic-regression ranker on the older taxonomy");
  c.train->add_option("--old", cfg.old_path, "older taxonomy (JSONL)")->required()->check(CLI::ExistingFile);
  c.train->add_option("--embeddings", cfg.embeddings_path, "word vectors (text format)")->required()->check(CLI::ExistingFile);
  c.train->add_option("--wiktionary", cfg.wiktionary_path, "Wiktionary JSONL")->check(CLI::ExistingFile);
  c.train->add_option("--model", cfg.model_path, "model file to write")->required();
  c.train->add_option("--pos", cfg.pos, "part of speech")->check(pos_check)->capture_default_str();
  c.train->add_option("--l2", cfg.l2, "L2 penalty")->check(CLI::NonNegativeNumber)->capture_default_str();
  c.train->add_option("--max-iters", cfg.max_iters, "gradient-descent iterations")->capture_default_str();
  c.train->add_option("--tol", cfg.tol, "stop when the gradient inf-norm is below this")->capture_default_str();
  c.train->add_option("--negatives", cfg.negatives, "negatives per positive")->check(CLI::PositiveNumber)->capture_default_str();
  c.train->add_option("--pairs-out", cfg.pairs_out, "also write the training pairs TSV");
  c.train->add_option("--vocab-limit", cfg.vocab_limit, "read at most this many vectors");

  c.predict = app.add_subcommand("predict", "predict hypernym synsets for every orphan of a dataset");
  c.predict->add_option("--taxonomy", cfg.taxonomy_path, "taxonomy to attach to (JSONL)")->required()->check(CLI::ExistingFile);
  c.predict->add_option("--embeddings", cfg.embeddings_path, "word vectors (text format)")->required()->check(CLI::ExistingFile);
  c.predict->add_option("--dataset", cfg.dataset_path, "dataset TSV")->required()->check(CLI::ExistingFile);
  c.predict->add_option("--method", cfg.method, "baseline | ranking | ranking-wiki")
      ->check(CLI::IsMember({"baseline", "ranking", "ranking-wiki"}))
      ->capture_default_str();
  c.predict->add_option("--model", cfg.model_path, "trained model (ranking-wiki)")->check(CLI::ExistingFile);
  c.predict->add_option("--wiktionary", cfg.wiktionary_path, "Wiktionary JSONL (ranking-wiki)")->check(CLI::ExistingFile);
  c.predict->add_option("--out", cfg.out_path, "predictions TSV to write")->required();
  c.predict->add_option("--oov-report", cfg.oov_report, "words without vectors (default: <out>.oov)");
  c.predict->add_flag("--explain", cfg.explain, "add a column with the neighbors behind each candidate");
  c.predict->add_option("--vocab-limit", cfg.vocab_limit, "read at most this many vectors");

  c.eval = app.add_subcommand("eval", "score predictions with connected-component MAP");
  c.eval->add_option("--taxonomy", cfg.taxonomy_path, "taxonomy the gold ids refer to")->required()->check(CLI::ExistingFile);
  c.eval->add_option("--dataset", cfg.dataset_path, "dataset TSV")->required()->check(CLI::ExistingFile);
  c.eval->add_option("--predictions", cfg.predictions_path, "predictions TSV")->required()->check(CLI::ExistingFile);
  c.eval->add_option("--relevance", cfg.relevance_path, "word/synset/0|1 judgements for Precision@k")->check(CLI::ExistingFile);
  c.eval->add_option("--limit", cfg.limit, "predictions scored per word (default: --k)");
  c.eval->add_flag("--groups", cfg.groups, "print MAP per word group (named entity / short / other)");
  c.eval->add_option("--json", cfg.json_path, "machine-readable report");

  c.report = app.add_subcommand("report", "taxonomy statistics and sense-count histograms");
  c.report->add_option("--old", cfg.old_path, "older taxonomy (JSONL)")->required()->check(CLI::ExistingFile);
  c.report->add_option("--new", cfg.new_path, "newer taxonomy (JSONL)")->check(CLI::ExistingFile);
  c.report->add_option("--dataset", cfg.dataset_path, "dataset TSV for the sense histogram")->check(CLI::ExistingFile);
  c.report->add_option("--predictions", cfg.predictions_path, "predictions TSV (adds words with a hit)")->check(CLI::ExistingFile);
  c.report->add_option("--limit", cfg.limit, "predictions scored per word (default: --k)");
  c.report->add_option("--histogram", cfg.histogram_path, "histogram CSV to write");
  c.report->add_option("--json", cfg.json_path, "machine-readable report");

  c.wiki_coverage = app.add_subcommand("wiki-coverage", "how much of a dataset Wiktionary covers");
  c.wiki_coverage->add_option("--wiktionary", cfg.wiktionary_path, "Wiktionary JSONL")->required()->check(CLI::ExistingFile);
  c.wiki_coverage->add_option("--dataset", cfg.dataset_path, "dataset TSV")->required()->check(CLI::ExistingFile);
  c.wiki_coverage->add_option("--taxonomy", cfg.taxonomy_path, "taxonomy the gold ids refer to")->required()->check(CLI::ExistingFile);
  c.wiki_coverage->add_option("--json", cfg.json_path, "machine-readable report");
  return c;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(path, lineno, "expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    std::replace(key.begin(), key.end(), '_', '-');
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

bool truthy(const std::string& v) {
  return v == "1" || v == "true" || v == "yes" || v == "on";
}

// Arguments supplying config-file values for options not given explicitly.
std::vector<std::string> config_arguments(CLI::App& app, CLI::App& selected,
                                          const std::map<std::string, std::string>& kv) {
  std::set<std::string> known;
  for (const CLI::Option* o : app.get_options()) known.insert(o->get_single_name());
  for (const CLI::App* sub : app.get_subcommands({})) {
    for (const CLI::Option* o : sub->get_options()) known.insert(o->get_single_name());
  }
  for (const auto& [key, value] : kv) {
    if (known.count(key) == 0 || key == "config" || key == "help") {
      throw InputError("unknown config key '" + key + "'");
    }
  }

  std::vector<std::string> extra;
  auto take = [&](const CLI::Option* o) {
    const std::string name = o->get_single_name();
    auto it = kv.find(name);
    if (it == kv.end() || o->count() > 0 || name == "config" || name == "help") return;
    if (o->get_type_size() == 0) {
      if (truthy(it->second)) extra.push_back("--" + name);
    } else {
      extra.push_back("--" + name);
      extra.push_back(it->second);
    }
  };
  for (const CLI::Option* o : app.get_options()) take(o);
  for (const CLI::Option* o : selected.get_options()) take(o);
  return extra;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Taxonomy enrichment: diachronic datasets, hypernym prediction and evaluation",
               "taxoenrich"};
  const Commands cmds = build_app(app, cfg);

  auto parse = [&](std::vector<std::string> forward) {
    std::reverse(forward.begin(), forward.end());
    app.parse(forward);
  };

  try {
    try {
      std::vector<std::string> forward(args.begin() + (args.empty() ? 0 : 1), args.end());
      parse(forward);
      if (!cfg.config_path.empty()) {
        CLI::App* selected = app.get_subcommands().front();
        const auto extra = config_arguments(app, *selected, read_config(cfg.config_path));
        if (!extra.empty()) {
          forward.insert(forward.end(), extra.begin(), extra.end());
          parse(forward);
        }
      }
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* selected = app.get_subcommands().front();
    if (selected == cmds.build_dataset) return cmd_build_dataset(cfg, out);
    if (selected == cmds.train) return cmd_train(cfg, out, err);
    if (selected == cmds.predict) return cmd_predict(cfg, out, err);
    if (selected == cmds.eval) return cmd_eval(cfg, out, err);
    if (selected == cmds.report) return cmd_report(cfg, out);
    if (selected == cmds.wiki_coverage) return cmd_wiki_coverage(cfg, out);
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace taxoenrich::cli
