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

#include "taxoenrich/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "taxoenrich/error.hpp"
#include "taxoenrich/simd/kernels.hpp"
#include "taxoenrich/text.hpp"

namespace taxoenrich {

double cosine(const WordVector& u, const WordVector& v) {
  if (u.dim() != v.dim()) {
    throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(u.dim()) +
                                " vs " + std::to_string(v.dim()) + ")");
  }
  const auto& k = simd::active();
  const double uu = k.dot(u.values.data(), u.values.data(), u.dim());
  const double vv = k.dot(v.values.data(), v.values.data(), v.dim());
  if (uu == 0.0 || vv == 0.0) return 0.0;
  const double c = k.dot(u.values.data(), v.values.data(), u.dim()) / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

namespace {

std::string_view next_field(std::string_view line, std::size_t& pos) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  const std::size_t start = pos;
  while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
  return line.substr(start, pos - start);
}

}  // namespace

bool EmbeddingStore::push_row(std::string token, std::span<const float> values) {
  if (rows_.count(token) != 0) {
    ++duplicates_;
    return false;
  }
  const std::size_t r = tokens_.size();
  rows_.emplace(token, r);
  tokens_.push_back(std::move(token));
  data_.insert(data_.end(), values.begin(), values.end());
  const double sq = simd::active().dot(values.data(), values.data(), values.size());
  norms_.push_back(std::sqrt(sq));
  if (sq == 0.0) ++zero_rows_;
  return true;
}

EmbeddingStore EmbeddingStore::load(const std::string& path, std::optional<std::size_t> limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open embedding file '" + path + "'");
  return parse(in, path, limit);
}

EmbeddingStore EmbeddingStore::parse(std::istream& in, const std::string& source,
                                     std::optional<std::size_t> limit) {
  EmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw InputError(source + ": empty embedding file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::size_t pos = 0;
    const auto count_f = next_field(line, pos);
    const auto dim_f = next_field(line, pos);
    std::size_t count = 0;
    std::size_t dim = 0;
    if (std::from_chars(count_f.data(), count_f.data() + count_f.size(), count).ec != std::errc{} ||
        std::from_chars(dim_f.data(), dim_f.data() + dim_f.size(), dim).ec != std::errc{} ||
        dim == 0 || !next_field(line, pos).empty()) {
      throw ParseError(source, lineno, "header must be '<vocab_count> <dim>'");
    }
    store.dim_ = dim;
    const std::size_t expected = limit ? std::min(*limit, count) : count;
    store.tokens_.reserve(expected);
    store.norms_.reserve(expected);
    store.data_.reserve(expected * dim);
  }

  std::vector<float> values(store.dim_);
  while ((!limit || store.size() < *limit) && std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::size_t pos = 0;
    const auto token = next_field(line, pos);
    std::size_t n = 0;
    for (auto field = next_field(line, pos); !field.empty(); field = next_field(line, pos)) {
      if (n == store.dim_) {
        throw ParseError(source, lineno,
                         "dimension mismatch: more than " + std::to_string(store.dim_) + " values");
      }
      float v = 0.0f;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ParseError(source, lineno, "non-numeric value '" + std::string(field) + "'");
      }
      values[n++] = v;
    }
    if (n != store.dim_) {
      throw ParseError(source, lineno,
                       "dimension mismatch: " + std::to_string(n) + " values, expected " +
                           std::to_string(store.dim_));
    }
    std::string key = text::normalize(token);
    if (key.empty()) throw ParseError(source, lineno, "empty token");
    store.push_row(std::move(key), values);
  }
  return store;
}

EmbeddingStore EmbeddingStore::from_rows(
    std::size_t dim, const std::vector<std::pair<std::string, std::vector<float>>>& rows) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be positive");
  EmbeddingStore store;
  store.dim_ = dim;
  for (const auto& [token, values] : rows) {
    if (values.size() != dim) throw std::invalid_argument("row '" + token + "' has wrong dimension");
    store.push_row(text::normalize(token), values);
  }
  return store;
}

void EmbeddingStore::write(std::ostream& out) const {
  out << size() << ' ' << dim_ << '\n';
  char buf[32];
  for (std::size_t r = 0; r < size(); ++r) {
    out << tokens_[r];
    for (float v : row(r)) {
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

std::optional<std::size_t> EmbeddingStore::row_of(std::string_view token) const {
  auto it = rows_.find(std::string(token));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

std::optional<WordVector> EmbeddingStore::unit(std::size_t r) const {
  if (norms_[r] == 0.0) return std::nullopt;
  WordVector v;
  v.values.reserve(dim_);
  for (float x : row(r)) v.values.push_back(static_cast<float>(x / norms_[r]));
  return v;
}

std::optional<WordVector> EmbeddingStore::word_vector(std::string_view word) const {
  const std::string key = text::normalize(word);
  if (auto r = row_of(key)) {
    const auto values = row(*r);
    return WordVector{{values.begin(), values.end()}};
  }
  const auto parts = text::subtokens(key);
  if (parts.size() < 2) return std::nullopt;

  std::vector<double> acc(dim_, 0.0);
  std::size_t found = 0;
  for (const auto& part : parts) {
    if (auto r = row_of(part)) {
      simd::active().accumulate(acc.data(), row(*r).data(), dim_);
      ++found;
    }
  }
  if (found == 0) return std::nullopt;
  WordVector v;
  v.values.reserve(dim_);
  for (double x : acc) v.values.push_back(static_cast<float>(x / static_cast<double>(found)));
  return v;
}

std::optional<WordVector> EmbeddingStore::synset_vector(const Synset& synset) const {
  std::vector<double> acc(dim_, 0.0);
  std::size_t found = 0;
  for (const auto& lemma : synset.lemmas) {
    if (auto v = word_vector(lemma)) {
      simd::active().accumulate(acc.data(), v->values.data(), dim_);
      ++found;
    }
  }
  if (found == 0) return std::nullopt;
  WordVector v;
  v.values.reserve(dim_);
  for (double x : acc) v.values.push_back(static_cast<float>(x / static_cast<double>(found)));
  return v;
}

namespace {

struct Hit {
  std::size_t row;
  double sim;
};

}  // namespace

std::vector<Neighbor> EmbeddingStore::nearest_neighbors(const WordVector& query, std::size_t k,
                                                        const std::vector<std::string>& exclude,
                                                        unsigned threads) const {
  if (k == 0) throw std::invalid_argument("nearest_neighbors: k must be >= 1");
  if (query.dim() != dim_) {
    throw std::invalid_argument("nearest_neighbors: query dimension " +
                                std::to_string(query.dim()) + ", store dimension " +
                                std::to_string(dim_));
  }
  const auto& kern = simd::active();
  const double qnorm = std::sqrt(kern.dot(query.values.data(), query.values.data(), dim_));

  std::unordered_set<std::size_t> excluded;
  for (const auto& token : exclude) {
    if (auto r = row_of(text::normalize(token))) excluded.insert(*r);
  }

  auto better = [this](const Hit& a, const Hit& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return tokens_[a.row] < tokens_[b.row];
  };

  // Keeps the best k of [begin, end) in a heap whose top is the worst kept hit.
  auto scan = [&](std::size_t begin, std::size_t end) {
    constexpr std::size_t kBlock = 512;
    std::vector<double> dots(kBlock);
    std::vector<Hit> heap;
    heap.reserve(k + 1);
    for (std::size_t b = begin; b < end; b += kBlock) {
      const std::size_t n = std::min(kBlock, end - b);
      kern.dot_rows(query.values.data(), data_.data() + b * dim_, dim_, n, dots.data());
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = b + i;
        if (norms_[r] == 0.0 || excluded.count(r) != 0) continue;
        const double sim = qnorm == 0.0 ? 0.0 : std::clamp(dots[i] / (qnorm * norms_[r]), -1.0, 1.0);
        const Hit hit{r, sim};
        if (heap.size() < k) {
          heap.push_back(hit);
          std::push_heap(heap.begin(), heap.end(), better);
        } else if (better(hit, heap.front())) {
          std::pop_heap(heap.begin(), heap.end(), better);
          heap.back() = hit;
          std::push_heap(heap.begin(), heap.end(), better);
        }
      }
    }
    return heap;
  };

  const std::size_t n = size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, n / 4096 + 1));
  std::vector<std::vector<Hit>> partial(workers);
  if (workers == 1) {
    partial[0] = scan(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] { partial[w] = scan(begin, end); });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<Hit> merged;
  for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  std::sort(merged.begin(), merged.end(), better);
  if (merged.size() > k) merged.resize(k);

  std::vector<Neighbor> out;
  out.reserve(merged.size());
  for (const Hit& h : merged) out.push_back({tokens_[h.row], h.sim});
  return out;
}

}  // namespace taxoenrich
