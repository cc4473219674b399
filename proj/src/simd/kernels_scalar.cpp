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

#include "taxoenrich/simd/kernels.hpp"

namespace taxoenrich::simd {
namespace {

double dot_scalar(const float* a, const float* b, std::size_t n) {
  double lane[kLanes] = {};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      lane[j] += static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
    }
  }
  for (std::size_t j = 0; i + j < n; ++j) {
    lane[j] += static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
  }
  return reduce_lanes(lane);
}

void dot_rows_scalar(const float* query, const float* rows, std::size_t dim, std::size_t nrows,
                     double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot_scalar(query, rows + r * dim, dim);
}

void accumulate_scalar(double* acc, const float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += static_cast<double>(x[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, dot_scalar, dot_rows_scalar, accumulate_scalar};
  return table;
}

}  // namespace taxoenrich::simd
