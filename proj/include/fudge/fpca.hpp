#pragma once

#include <vector>

#include "fudge/grid.hpp"
#include "fudge/mat.hpp"
#include "fudge/panel.hpp"

namespace fudge {

// Empirical covariance function of one node, tabulated on the grid.
struct CovFunction {
  int node = 0;
  TimeGrid grid;
  Mat K;  // |grid| x |grid|, symmetric
};

// Leading eigenpairs of the quadrature-weighted covariance operator.
// Eigenfunctions are grid-sampled columns, unit L2 norm under trapezoid
// quadrature, ordered by nonincreasing eigenvalue. The entry of largest
// magnitude of each eigenfunction is made positive to pin the sign.
struct EigenSystem {
  int node = 0;
  TimeGrid grid;
  std::vector<double> eigenvalues;
  Mat eigenfunctions;  // |grid| x M
};

// n x (p*M) score matrix, node-major: columns j*M .. j*M+M-1 hold the
// component scores of node j.
struct ScoreMatrix {
  int n = 0;
  int p = 0;
  int M = 0;
  Mat scores;
};

// Centered sample covariance of the scores (divisor n), symmetrized.
struct ScoreCovariance {
  int p = 0;
  int M = 0;
  Mat S;  // pM x pM

  int dim() const { return p * M; }
  Mat block(int j, int l) const;
};

// Covariance of node j from an n x |grid| matrix of curve values, divisor n.
CovFunction empirical_cov_values(const Mat& values, const TimeGrid& grid, int node);
CovFunction empirical_cov(const SmoothedPanel& panel, int node);
CovFunction empirical_cov(const SmoothedPanel& panel, int node, const Mat& basis_matrix);

EigenSystem eigendecompose(const CovFunction& cov, int M);

// Eigensystems for every node of a panel (convenience for the pipeline).
std::vector<EigenSystem> eigendecompose_all(const SmoothedPanel& panel, int M);

ScoreMatrix scores(const SmoothedPanel& panel, const std::vector<EigenSystem>& systems, int M);

ScoreCovariance score_cov(const ScoreMatrix& scores);

// Mean held-out curve reconstruction error (squared L2 under quadrature)
// per candidate truncation level. Folds partition curves; eigensystems are
// fit on the training folds only.
std::vector<double> cv_loss_table_M(const SmoothedPanel& panel, const std::vector<int>& candidates,
                                    int folds);

// Cross-validated truncation level; ties break toward smaller M.
int select_M_cv(const SmoothedPanel& panel, const std::vector<int>& candidates, int folds,
                double tie_fraction = 0.01);

}  // namespace fudge
