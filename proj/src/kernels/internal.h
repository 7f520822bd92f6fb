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

#ifndef DLM_SRC_KERNELS_INTERNAL_H_
#define DLM_SRC_KERNELS_INTERNAL_H_

#include <cstddef>

namespace dlm::kernels {

namespace scalar {
double logistic(double z);
double log_loss(const double* z, const double* y, std::size_t n);
}  // namespace scalar

#if defined(DLM_HAVE_AVX2)
struct Table;
const Table& avx2_table_impl();
#endif

}  // namespace dlm::kernels

#endif  // DLM_SRC_KERNELS_INTERNAL_H_
