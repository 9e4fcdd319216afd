#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fudge/fpca.hpp"
#include "fudge/mat.hpp"

namespace fudge {

// Estimate of the difference between the two populations' score precision
// matrices. Not symmetrized: symmetry is not enforced on the estimate.
struct DeltaEstimate {
  int p = 0;
  int M = 0;
  Mat delta;  // pM x pM

  DeltaEstimate() = default;
  DeltaEstimate(int p_, int M_) : p(p_), M(M_), delta(p_ * M_, p_ * M_) {}

  int dim() const { return p * M; }
  Mat block(int j, int l) const;
  double block_norm(int j, int l) const;
};

struct SolverConfig {
  double lambda = 0.0;
  // Step size; unset means 1 / (lambda_max(S_X) * lambda_max(S_Y)), the
  // reciprocal of the gradient's Lipschitz constant.
  std::optional<double> step;
  double tol = 1e-8;  // relative change of the penalized objective
  int max_iters = 10000;
  bool keep_trace = false;
};

struct SolveReport {
  int iterations = 0;
  double objective = 0.0;
  bool converged = false;
  double step = 0.0;
  std::vector<double> trace;  // penalized objective per iteration, if kept
};

// Quadratic loss tr[1/2 S_Y D^T S_X D - D^T (S_Y - S_X)].
double loss(const DeltaEstimate& delta, const ScoreCovariance& sx, const ScoreCovariance& sy);

// Gradient S_X D S_Y - (S_Y - S_X).
Mat gradient(const DeltaEstimate& delta, const ScoreCovariance& sx, const ScoreCovariance& sy);

// Blockwise soft-threshold: each M x M block of A is zeroed when its
// Frobenius norm is <= threshold and rescaled by (norm - threshold) / norm
// otherwise.
Mat prox_group(const Mat& a, double threshold, int p, int M);

// Proximal gradient iteration from a zero start (or the given warm start).
// The reported objective is loss + lambda * sum of block norms.
std::pair<DeltaEstimate, SolveReport> fit(const ScoreCovariance& sx, const ScoreCovariance& sy,
                                          const SolverConfig& cfg,
                                          const DeltaEstimate* warm_start = nullptr);

// Solves a descending penalty sequence with warm starts.
std::vector<std::pair<DeltaEstimate, SolveReport>> lambda_path(const ScoreCovariance& sx,
                                                               const ScoreCovariance& sy,
                                                               const std::vector<double>& lambdas,
                                                               const SolverConfig& cfg);

// Smallest penalty for which the zero matrix is optimal:
// max over blocks of ||(S_Y - S_X)_jl||_F.
double lambda_max_bound(const ScoreCovariance& sx, const ScoreCovariance& sy);

// Log-spaced descending penalty grid from the null bound down to
// bound * min_ratio.
std::vector<double> default_lambda_grid(double lambda_max, int count, double min_ratio = 1e-3);

}  // namespace fudge
