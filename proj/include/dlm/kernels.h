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

#ifndef DLM_KERNELS_H_
#define DLM_KERNELS_H_

// Dense double-precision loops used by training, feature ranking and batch
// prediction. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2+FMA variant selected at runtime. The variants agree to a
// few ulps; summation order differs, so results are not bit-identical
// across instruction sets. Set DLM_ISA=scalar to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace dlm::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct Table {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = logistic(z[i]) - y[i]
  void (*sigmoid_residual)(const double* z, const double* y, double* out, std::size_t n);
  // out[i] = logistic(z[i])
  void (*sigmoid)(const double* z, double* out, std::size_t n);
  // acc[i] += scale * |x[i] - q|
  void (*abs_diff_accumulate)(double scale, const double* x, double q, double* acc,
                              std::size_t n);
  // sum_i softplus(z[i]) - y[i] * z[i]  (mean log-loss numerator)
  double (*log_loss)(const double* z, const double* y, std::size_t n);
};

const Table& scalar_table();
// nullptr when the AVX2 variant was not compiled in.
const Table* avx2_table();

// Best instruction set supported by both the build and the running CPU.
Isa detected_isa();
// Throws std::invalid_argument if `isa` is unavailable.
void set_active_isa(Isa isa);
const Table& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void sigmoid_residual(std::span<const double> z, std::span<const double> y,
                             std::span<double> out) {
  active().sigmoid_residual(z.data(), y.data(), out.data(), z.size());
}
inline void sigmoid(std::span<const double> z, std::span<double> out) {
  active().sigmoid(z.data(), out.data(), z.size());
}
inline void abs_diff_accumulate(double scale, std::span<const double> x, double q,
                                std::span<double> acc) {
  active().abs_diff_accumulate(scale, x.data(), q, acc.data(), x.size());
}
inline double log_loss(std::span<const double> z, std::span<const double> y) {
  return active().log_loss(z.data(), y.data(), z.size());
}

}  // namespace dlm::kernels

#endif  // DLM_KERNELS_H_
