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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "taxoenrich/simd/kernels.hpp"

namespace taxoenrich::simd {
namespace {

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_kernels();
    case Isa::avx2:
#if defined(TAXOENRICH_HAVE_AVX2_KERNELS)
      return cpu_supports(Isa::avx2) ? &avx2_kernels() : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("TAXOENRICH_SIMD")) {
    const std::string name(env);
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
      if (name == isa_name(isa)) {
        if (const KernelTable* t = table_for(isa)) return t;
      }
    }
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (table_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    const KernelTable* chosen = pick_default();
    g_active.compare_exchange_strong(t, chosen, std::memory_order_acq_rel);
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

void force_isa(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) {
    throw std::invalid_argument("SIMD variant '" + std::string(isa_name(isa)) +
                                "' is not available");
  }
  g_active.store(t, std::memory_order_release);
}

}  // namespace taxoenrich::simd
