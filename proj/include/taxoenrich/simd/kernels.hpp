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
#include <string_view>
#include <vector>

// Dense float kernels behind the embedding store. Every variant accumulates
// float products in double precision across eight fixed lanes (element i goes
// to lane i % 8) and reduces the lanes in one fixed order. Because a product
// of two floats is exact in double, the scalar reference and the vector
// variants produce bit-identical results.

namespace taxoenrich::simd {

inline constexpr std::size_t kLanes = 8;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const float* a, const float* b, std::size_t n);
  // out[r] = dot(query, rows + r * dim) for r in [0, nrows)
  void (*dot_rows)(const float* query, const float* rows, std::size_t dim, std::size_t nrows,
                   double* out);
  // acc[i] += x[i]
  void (*accumulate)(double* acc, const float* x, std::size_t n);
};

// Kernel tables compiled into this binary.
const KernelTable& scalar_kernels();
#if defined(TAXOENRICH_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernels();
#endif

bool cpu_supports(Isa isa);
std::vector<Isa> available_isas();

// The table selected at first use: the widest supported variant, unless the
// TAXOENRICH_SIMD environment variable names another one ("scalar", "avx2").
const KernelTable& active();

// Overrides the runtime choice. Throws std::invalid_argument when the
// variant is not available on this CPU/build.
void force_isa(Isa isa);

// Lane reduction shared by every variant.
inline double reduce_lanes(const double* lane) {
  const double s0 = lane[0] + lane[4];
  const double s1 = lane[1] + lane[5];
  const double s2 = lane[2] + lane[6];
  const double s3 = lane[3] + lane[7];
  return (s0 + s2) + (s1 + s3);
}

}  // namespace taxoenrich::simd
