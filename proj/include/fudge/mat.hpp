#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fudge/errors.hpp"

namespace fudge {

// Dense row-major matrix of doubles. Deliberately minimal: storage plus
// indexing. Heavy linear algebra goes through Eigen maps or the kernels
// module, both of which operate on the raw buffer.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InvalidArgument("Mat: negative dimension");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return d_.size(); }

  double& operator()(int i, int j) { return d_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * cols_ + j]; }

  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }
  double* row(int i) { return d_.data() + static_cast<size_t>(i) * cols_; }
  const double* row(int i) const { return d_.data() + static_cast<size_t>(i) * cols_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  bool all_finite() const {
    for (double v : d_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : d_) s += v * v;
    return std::sqrt(s);
  }

 private:
  int rows_, cols_;
  std::vector<double> d_;
};

// Index arithmetic for a square matrix partitioned into a p x p grid of
// M x M blocks.
struct BlockLayout {
  int p = 0;
  int M = 0;

  int dim() const { return p * M; }
  // Offset of entry (0,0) of block (j,l) into the row-major buffer.
  size_t block_offset(int j, int l) const {
    return (static_cast<size_t>(j) * M) * dim() + static_cast<size_t>(l) * M;
  }
};

}  // namespace fudge
