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

// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "dlm/kernels.h"
#include "kernels/internal.h"

namespace dlm::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// exp(x) for x <= 0. Cody-Waite reduction x = k*ln2 + r, |r| <= ln2/2, then
// a degree-13 Taylor polynomial (truncation error below 1e-17 relative).
// Arguments below -708 are clamped, giving ~3e-308 instead of a subnormal.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double kCoeff[] = {
      1.0 / 6227020800.0,  // 1/13!
      1.0 / 479001600.0,   // 1/12!
      1.0 / 39916800.0,    // 1/11!
      1.0 / 3628800.0,     // 1/10!
      1.0 / 362880.0,      // 1/9!
      1.0 / 40320.0,       // 1/8!
      1.0 / 5040.0,        // 1/7!
      1.0 / 720.0,         // 1/6!
      1.0 / 120.0,         // 1/5!
      1.0 / 24.0,          // 1/4!
      1.0 / 6.0,           // 1/3!
      0.5,                 // 1/2!
      1.0,                 // 1/1!
      1.0,                 // 1/0!
  };
  __m256d p = _mm256_set1_pd(kCoeff[0]);
  for (std::size_t i = 1; i < sizeof(kCoeff) / sizeof(kCoeff[0]); ++i) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kCoeff[i]));
  }

  __m256i ki = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline __m256d logistic_pd(__m256d z) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d e = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), abs_pd(z)));
  __m256d pos = _mm256_div_pd(one, _mm256_add_pd(one, e));
  __m256d neg = _mm256_mul_pd(e, pos);
  __m256d z_nonneg = _mm256_cmp_pd(z, _mm256_setzero_pd(), _CMP_GE_OQ);
  return _mm256_blendv_pd(neg, pos, z_nonneg);
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void sigmoid_residual(const double* z, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = logistic_pd(_mm256_loadu_pd(z + i));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(s, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = scalar::logistic(z[i]) - y[i];
}

void sigmoid(const double* z, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, logistic_pd(_mm256_loadu_pd(z + i)));
  for (; i < n; ++i) out[i] = scalar::logistic(z[i]);
}

void abs_diff_accumulate(double scale, const double* x, double q, double* acc, std::size_t n) {
  const __m256d sv = _mm256_set1_pd(scale);
  const __m256d qv = _mm256_set1_pd(q);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), qv));
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(sv, d, _mm256_loadu_pd(acc + i)));
  }
  for (; i < n; ++i) acc[i] = std::fma(scale, std::fabs(x[i] - q), acc[i]);
}

}  // namespace

const Table& avx2_table_impl() {
  // log1p has no cheap vector form here; the loss is evaluated once per
  // epoch at most, so the scalar routine is shared.
  static const Table kTable{Isa::kAvx2,       dot,     sum, axpy, sigmoid_residual,
                            sigmoid,          abs_diff_accumulate, scalar::log_loss};
  return kTable;
}

}  // namespace dlm::kernels
