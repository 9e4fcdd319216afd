#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fudge/kernels.hpp"

namespace fudge::kernels {
namespace {

void gemm_scalar(const double* A, const double* B, double* C, int n, int k, int m) {
  std::fill(C, C + static_cast<size_t>(n) * m, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* arow = A + static_cast<size_t>(i) * k;
    double* crow = C + static_cast<size_t>(i) * m;
    for (int kk = 0; kk < k; ++kk) {
      const double a = arow[kk];
      const double* brow = B + static_cast<size_t>(kk) * m;
      for (int j = 0; j < m; ++j) crow[j] += a * brow[j];
    }
  }
}

void axpby_scalar(double* out, const double* x, double a, const double* y, int n) {
  for (int i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void sub_scalar(double* out, const double* x, const double* y, int n) {
  for (int i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

double dot_scalar(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_scalar(const double* a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double block_sum_sq(const double* blk, int M, int lda) {
  double s = 0.0;
  for (int r = 0; r < M; ++r) {
    const double* row = blk + static_cast<size_t>(r) * lda;
    for (int c = 0; c < M; ++c) s += row[c] * row[c];
  }
  return s;
}

void block_frob_norms_scalar(const double* A, int p, int M, double* out) {
  const int dim = p * M;
  for (int j = 0; j < p; ++j) {
    for (int l = 0; l < p; ++l) {
      const double* blk = A + (static_cast<size_t>(j) * M) * dim + static_cast<size_t>(l) * M;
      out[static_cast<size_t>(j) * p + l] = std::sqrt(block_sum_sq(blk, M, dim));
    }
  }
}

double group_soft_threshold_scalar(const double* A, double* out, int p, int M, double t) {
  const int dim = p * M;
  double penalty = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int l = 0; l < p; ++l) {
      const size_t off = (static_cast<size_t>(j) * M) * dim + static_cast<size_t>(l) * M;
      const double* src = A + off;
      double* dst = out + off;
      const double nrm = std::sqrt(block_sum_sq(src, M, dim));
      if (nrm <= t) {
        for (int r = 0; r < M; ++r)
          for (int c = 0; c < M; ++c) dst[static_cast<size_t>(r) * dim + c] = 0.0;
      } else {
        const double scale = (nrm - t) / nrm;
        for (int r = 0; r < M; ++r)
          for (int c = 0; c < M; ++c)
            dst[static_cast<size_t>(r) * dim + c] = scale * src[static_cast<size_t>(r) * dim + c];
        penalty += nrm - t;  // equals the Frobenius norm of the shrunk block
      }
    }
  }
  return penalty;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{gemm_scalar,   axpby_scalar,           sub_scalar,
                       dot_scalar,    sum_sq_scalar,          block_frob_norms_scalar,
                       group_soft_threshold_scalar};
  return ops;
}

}  // namespace fudge::kernels
