// AVX2+FMA kernel variants. This file is compiled with -mavx2 -mfma on
// x86-64; callers must check cpu_has_avx2() before using the table.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fudge/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace fudge::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void gemm_avx2(const double* A, const double* B, double* C, int n, int k, int m) {
  std::fill(C, C + static_cast<size_t>(n) * m, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* arow = A + static_cast<size_t>(i) * k;
    double* crow = C + static_cast<size_t>(i) * m;
    for (int kk = 0; kk < k; ++kk) {
      const __m256d a = _mm256_set1_pd(arow[kk]);
      const double* brow = B + static_cast<size_t>(kk) * m;
      int j = 0;
      for (; j + 8 <= m; j += 8) {
        __m256d c0 = _mm256_loadu_pd(crow + j);
        __m256d c1 = _mm256_loadu_pd(crow + j + 4);
        c0 = _mm256_fmadd_pd(a, _mm256_loadu_pd(brow + j), c0);
        c1 = _mm256_fmadd_pd(a, _mm256_loadu_pd(brow + j + 4), c1);
        _mm256_storeu_pd(crow + j, c0);
        _mm256_storeu_pd(crow + j + 4, c1);
      }
      for (; j + 4 <= m; j += 4) {
        __m256d c0 = _mm256_loadu_pd(crow + j);
        c0 = _mm256_fmadd_pd(a, _mm256_loadu_pd(brow + j), c0);
        _mm256_storeu_pd(crow + j, c0);
      }
      const double as = arow[kk];
      for (; j < m; ++j) crow[j] += as * brow[j];
    }
  }
}

void axpby_avx2(double* out, const double* x, double a, const double* y, int n) {
  const __m256d av = _mm256_set1_pd(a);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_fmadd_pd(av, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

void sub_avx2(double* out, const double* x, const double* y, int n) {
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

double dot_avx2(const double* a, const double* b, int n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_avx2(const double* a, int n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(a + i);
    const __m256d v1 = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double block_sum_sq_avx2(const double* blk, int M, int lda) {
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  for (int r = 0; r < M; ++r) {
    const double* row = blk + static_cast<size_t>(r) * lda;
    int c = 0;
    for (; c + 4 <= M; c += 4) {
      const __m256d v = _mm256_loadu_pd(row + c);
      acc = _mm256_fmadd_pd(v, v, acc);
    }
    for (; c < M; ++c) tail += row[c] * row[c];
  }
  return hsum(acc) + tail;
}

void block_frob_norms_avx2(const double* A, int p, int M, double* out) {
  const int dim = p * M;
  for (int j = 0; j < p; ++j) {
    for (int l = 0; l < p; ++l) {
      const double* blk = A + (static_cast<size_t>(j) * M) * dim + static_cast<size_t>(l) * M;
      out[static_cast<size_t>(j) * p + l] = std::sqrt(block_sum_sq_avx2(blk, M, dim));
    }
  }
}

double group_soft_threshold_avx2(const double* A, double* out, int p, int M, double t) {
  const int dim = p * M;
  double penalty = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int l = 0; l < p; ++l) {
      const size_t off = (static_cast<size_t>(j) * M) * dim + static_cast<size_t>(l) * M;
      const double* src = A + off;
      double* dst = out + off;
      const double nrm = std::sqrt(block_sum_sq_avx2(src, M, dim));
      if (nrm <= t) {
        for (int r = 0; r < M; ++r) {
          double* drow = dst + static_cast<size_t>(r) * dim;
          int c = 0;
          const __m256d z = _mm256_setzero_pd();
          for (; c + 4 <= M; c += 4) _mm256_storeu_pd(drow + c, z);
          for (; c < M; ++c) drow[c] = 0.0;
        }
      } else {
        const double scale = (nrm - t) / nrm;
        const __m256d sv = _mm256_set1_pd(scale);
        for (int r = 0; r < M; ++r) {
          const double* srow = src + static_cast<size_t>(r) * dim;
          double* drow = dst + static_cast<size_t>(r) * dim;
          int c = 0;
          for (; c + 4 <= M; c += 4)
            _mm256_storeu_pd(drow + c, _mm256_mul_pd(sv, _mm256_loadu_pd(srow + c)));
          for (; c < M; ++c) drow[c] = scale * srow[c];
        }
        penalty += nrm - t;
      }
    }
  }
  return penalty;
}

}  // namespace

const Ops* avx2_ops_or_null() {
  static const Ops ops{gemm_avx2,   axpby_avx2,           sub_avx2,
                       dot_avx2,    sum_sq_avx2,          block_frob_norms_avx2,
                       group_soft_threshold_avx2};
  return &ops;
}

}  // namespace fudge::kernels

#else

namespace fudge::kernels {
const Ops* avx2_ops_or_null() { return nullptr; }
}  // namespace fudge::kernels

#endif
