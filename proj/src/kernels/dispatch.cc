// Copyright 2026 The DLM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dlm/kernels.h"
#include "kernels/internal.h"

namespace dlm::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(DLM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* initial_table() {
  const char* forced = std::getenv("DLM_ISA");
  if (forced != nullptr && std::string(forced) == "scalar") return &scalar_table();
  if (const Table* t = avx2_table(); t != nullptr && cpu_has_avx2()) return t;
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

const Table* avx2_table() {
#if defined(DLM_HAVE_AVX2)
  return &avx2_table_impl();
#else
  return nullptr;
#endif
}

Isa detected_isa() {
  return avx2_table() != nullptr && cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

void set_active_isa(Isa isa) {
  if (isa == Isa::kScalar) {
    current().store(&scalar_table());
    return;
  }
  if (detected_isa() != Isa::kAvx2) throw std::invalid_argument("AVX2 kernels unavailable");
  current().store(avx2_table());
}

const Table& active() { return *current().load(std::memory_order_relaxed); }

}  // namespace dlm::kernels
