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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "taxoenrich/taxonomy.hpp"

namespace taxoenrich {

// A dense embedding-space vector. Values are stored as float, like the
// vectors they are read from; arithmetic on them runs in double.
struct WordVector {
  std::vector<float> values;

  std::size_t dim() const noexcept { return values.size(); }
  friend bool operator==(const WordVector&, const WordVector&) = default;
};

struct Neighbor {
  std::string token;
  double similarity = 0.0;
};

// Cosine similarity, 0 when either vector has zero norm. Throws
// std::invalid_argument on dimension mismatch.
double cosine(const WordVector& u, const WordVector& v);

// Pre-trained static word vectors (word2vec text format), keyed by
// normalized token. Immutable after construction.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  // `limit` caps the number of kept tokens (file order). Duplicate tokens
  // keep the first occurrence; see duplicate_count().
  static EmbeddingStore load(const std::string& path,
                             std::optional<std::size_t> limit = std::nullopt);
  static EmbeddingStore parse(std::istream& in, const std::string& source = "<stream>",
                              std::optional<std::size_t> limit = std::nullopt);
  static EmbeddingStore from_rows(std::size_t dim,
                                  const std::vector<std::pair<std::string, std::vector<float>>>& rows);

  void write(std::ostream& out) const;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  std::size_t duplicate_count() const noexcept { return duplicates_; }
  std::size_t zero_norm_count() const noexcept { return zero_rows_; }

  const std::string& token(std::size_t row) const { return tokens_[row]; }
  std::optional<std::size_t> row_of(std::string_view token) const;
  std::span<const float> row(std::size_t r) const {
    return {data_.data() + r * dim_, dim_};
  }
  double norm(std::size_t r) const { return norms_[r]; }
  // Unit-L2 copy of a row; std::nullopt for zero-norm rows.
  std::optional<WordVector> unit(std::size_t r) const;

  // Exact normalized token, else the mean of known '_'/'-' subtokens,
  // else nothing.
  std::optional<WordVector> word_vector(std::string_view word) const;
  // Mean of the lemma vectors that resolve.
  std::optional<WordVector> synset_vector(const Synset& synset) const;

  // The k most cosine-similar tokens, excluding `exclude` (normalized before
  // matching) and zero-norm rows. Ordered by similarity descending, then
  // token ascending. Output does not depend on `threads`.
  std::vector<Neighbor> nearest_neighbors(const WordVector& query, std::size_t k,
                                          const std::vector<std::string>& exclude = {},
                                          unsigned threads = 1) const;

 private:
  bool push_row(std::string token, std::span<const float> values);

  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> rows_;
  std::size_t duplicates_ = 0;
  std::size_t zero_rows_ = 0;
};

}  // namespace taxoenrich
