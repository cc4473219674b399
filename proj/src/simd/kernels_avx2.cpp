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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "taxoenrich/simd/kernels.hpp"

namespace taxoenrich::simd {
namespace {

inline double dot_avx2(const float* a, const float* b, std::size_t n) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256 vb = _mm256_loadu_ps(b + i);
    lo = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                         _mm256_cvtps_pd(_mm256_castps256_ps128(vb)), lo);
    hi = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                         _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)), hi);
  }
  alignas(32) double lane[kLanes];
  _mm256_store_pd(lane, lo);
  _mm256_store_pd(lane + 4, hi);
  for (std::size_t j = 0; i + j < n; ++j) {
    lane[j] += static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
  }
  return reduce_lanes(lane);
}

void dot_rows_avx2(const float* query, const float* rows, std::size_t dim, std::size_t nrows,
                   double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot_avx2(query, rows + r * dim, dim);
}

void accumulate_avx2(double* acc, const float* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_cvtps_pd(_mm_loadu_ps(x + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), v));
  }
  for (; i < n; ++i) acc[i] += static_cast<double>(x[i]);
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::avx2, dot_avx2, dot_rows_avx2, accumulate_avx2};
  return table;
}

}  // namespace taxoenrich::simd
