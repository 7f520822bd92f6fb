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

#include <cmath>

#include "dlm/kernels.h"
#include "kernels/internal.h"

namespace dlm::kernels {
namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double logistic(double z) {
  // exp of a non-positive argument only, so neither branch overflows.
  double e = std::exp(-std::fabs(z));
  return z >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
}

void sigmoid_residual(const double* z, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = logistic(z[i]) - y[i];
}

void sigmoid(const double* z, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = logistic(z[i]);
}

void abs_diff_accumulate(double scale, const double* x, double q, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += scale * std::fabs(x[i] - q);
}

double log_loss(const double* z, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double softplus = std::fmax(z[i], 0.0) + std::log1p(std::exp(-std::fabs(z[i])));
    acc += softplus - y[i] * z[i];
  }
  return acc;
}

}  // namespace scalar

const Table& scalar_table() {
  static const Table kTable{Isa::kScalar,
                            scalar::dot,
                            scalar::sum,
                            scalar::axpy,
                            scalar::sigmoid_residual,
                            scalar::sigmoid,
                            scalar::abs_diff_accumulate,
                            scalar::log_loss};
  return kTable;
}

}  // namespace dlm::kernels
