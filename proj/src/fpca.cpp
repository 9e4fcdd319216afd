#include "fudge/fpca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "fudge/cv.hpp"
#include "fudge/errors.hpp"

namespace fudge {

Mat ScoreCovariance::block(int j, int l) const {
  Mat b(M, M);
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) b(r, c) = S(j * M + r, l * M + c);
  return b;
}

CovFunction empirical_cov_values(const Mat& values, const TimeGrid& grid, int node) {
  const int n = values.rows();
  const int g = values.cols();
  if (n < 2) throw InsufficientSampleError("empirical_cov: need at least 2 curves");
  if (g != grid.size()) throw ShapeError("empirical_cov: values do not match grid");

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> V(
      values.data(), n, g);
  const Eigen::RowVectorXd mean = V.colwise().mean();
  const Eigen::MatrixXd centered = V.rowwise() - mean;
  Eigen::MatrixXd K = centered.transpose() * centered / static_cast<double>(n);
  K = 0.5 * (K + K.transpose()).eval();

  CovFunction out;
  out.node = node;
  out.grid = grid;
  out.K = Mat(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) out.K(i, j) = K(i, j);
  return out;
}

CovFunction empirical_cov(const SmoothedPanel& panel, int node, const Mat& B) {
  return empirical_cov_values(panel.node_values(node, B), panel.grid, node);
}

CovFunction empirical_cov(const SmoothedPanel& panel, int node) {
  return empirical_cov(panel, node, eval_basis(panel.basis, panel.grid));
}

EigenSystem eigendecompose(const CovFunction& cov, int M) {
  const int g = cov.grid.size();
  if (M < 1) throw InvalidArgument("eigendecompose: M must be >= 1");
  if (M > g) throw InvalidArgument("eigendecompose: M exceeds grid size");
  if (!cov.K.all_finite()) throw NumericError("eigendecompose: non-finite covariance entries");

  const auto w = cov.grid.trapezoid_weights();
  std::vector<double> sqw(w.size());
  for (size_t i = 0; i < w.size(); ++i) sqw[i] = std::sqrt(w[i]);

  // Quadrature-weighted operator: eigenpairs of W^(1/2) K W^(1/2) give the
  // integral operator's spectrum; eigenvectors map back through W^(-1/2).
  Eigen::MatrixXd B(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) B(i, j) = sqw[i] * cov.K(i, j) * sqw[j];
  B = 0.5 * (B + B.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  if (es.info() != Eigen::Success) throw NumericError("eigendecompose: eigensolver failed");

  // Order by value descending, original solver index ascending on ties.
  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });

  EigenSystem out;
  out.node = cov.node;
  out.grid = cov.grid;
  out.eigenvalues.resize(M);
  out.eigenfunctions = Mat(g, M);
  for (int k = 0; k < M; ++k) {
    const int idx = order[static_cast<size_t>(k)];
    out.eigenvalues[static_cast<size_t>(k)] = std::max(es.eigenvalues()(idx), 0.0);
    Eigen::VectorXd phi = es.eigenvectors().col(idx);
    for (int i = 0; i < g; ++i) phi(i) /= sqw[i];
    double nrm2 = 0.0;
    for (int i = 0; i < g; ++i) nrm2 += w[static_cast<size_t>(i)] * phi(i) * phi(i);
    const double nrm = std::sqrt(nrm2);
    if (nrm > 0.0) phi /= nrm;
    int imax = 0;
    for (int i = 1; i < g; ++i)
      if (std::abs(phi(i)) > std::abs(phi(imax))) imax = i;
    if (phi(imax) < 0.0) phi = -phi;
    for (int i = 0; i < g; ++i) out.eigenfunctions(i, k) = phi(i);
  }
  return out;
}

std::vector<EigenSystem> eigendecompose_all(const SmoothedPanel& panel, int M) {
  const Mat B = eval_basis(panel.basis, panel.grid);
  std::vector<EigenSystem> out;
  out.reserve(panel.p);
  for (int j = 0; j < panel.p; ++j) out.push_back(eigendecompose(empirical_cov(panel, j, B), M));
  return out;
}

ScoreMatrix scores(const SmoothedPanel& panel, const std::vector<EigenSystem>& systems, int M) {
  if (static_cast<int>(systems.size()) != panel.p)
    throw InvalidArgument("scores: need one eigensystem per node");
  for (const auto& sys : systems) {
    if (!(sys.grid == panel.grid)) throw GridMismatchError("scores: eigensystem grid differs");
    if (sys.eigenfunctions.cols() < M)
      throw InvalidArgument("scores: eigensystem has fewer than M components");
  }
  const int g = panel.grid.size();
  const auto w = panel.grid.trapezoid_weights();
  const Mat B = eval_basis(panel.basis, panel.grid);

  ScoreMatrix out;
  out.n = panel.n;
  out.p = panel.p;
  out.M = M;
  out.scores = Mat(panel.n, panel.p * M);
  for (int j = 0; j < panel.p; ++j) {
    const Mat V = panel.node_values(j, B);
    for (int i = 0; i < panel.n; ++i) {
      const double* x = V.row(i);
      for (int k = 0; k < M; ++k) {
        double s = 0.0;
        for (int t = 0; t < g; ++t)
          s += x[t] * w[static_cast<size_t>(t)] * systems[static_cast<size_t>(j)].eigenfunctions(t, k);
        out.scores(i, j * M + k) = s;
      }
    }
  }
  return out;
}

ScoreCovariance score_cov(const ScoreMatrix& sm) {
  if (sm.n < 2) throw InsufficientSampleError("score_cov: need at least 2 samples");
  const int d = sm.p * sm.M;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> A(
      sm.scores.data(), sm.n, d);
  const Eigen::RowVectorXd mean = A.colwise().mean();
  const Eigen::MatrixXd centered = A.rowwise() - mean;
  Eigen::MatrixXd S = centered.transpose() * centered / static_cast<double>(sm.n);
  S = 0.5 * (S + S.transpose()).eval();

  ScoreCovariance out;
  out.p = sm.p;
  out.M = sm.M;
  out.S = Mat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.S(i, j) = S(i, j);
  return out;
}

std::vector<double> cv_loss_table_M(const SmoothedPanel& panel, const std::vector<int>& candidates,
                                    int folds) {
  if (candidates.empty()) throw InvalidArgument("select_M_cv: empty candidate list");
  if (folds < 2) throw InvalidArgument("select_M_cv: folds must be >= 2");
  if (panel.n < folds) throw InvalidArgument("select_M_cv: more folds than curves");
  const int g = panel.grid.size();
  const int max_m = *std::max_element(candidates.begin(), candidates.end());
  if (max_m > g) throw InvalidArgument("select_M_cv: candidate M exceeds grid size");
  if (*std::min_element(candidates.begin(), candidates.end()) < 1)
    throw InvalidArgument("select_M_cv: candidate M must be >= 1");

  std::vector<int> sorted_cands = candidates;
  std::sort(sorted_cands.begin(), sorted_cands.end());

  const Mat B = eval_basis(panel.basis, panel.grid);
  const auto w = panel.grid.trapezoid_weights();

  std::vector<double> err(candidates.size(), 0.0);
  long count = 0;
  for (int f = 0; f < folds; ++f) {
    std::vector<int> train_idx, test_idx;
    for (int i = 0; i < panel.n; ++i) (i % folds == f ? test_idx : train_idx).push_back(i);
    if (train_idx.size() < 2)
      throw InsufficientSampleError("select_M_cv: training fold has fewer than 2 curves");

    SmoothedPanel train;
    train.n = static_cast<int>(train_idx.size());
    train.p = panel.p;
    train.basis = panel.basis;
    train.grid = panel.grid;
    train.coefs.resize(static_cast<size_t>(train.n) * panel.p * panel.L());
    for (size_t r = 0; r < train_idx.size(); ++r)
      for (int j = 0; j < panel.p; ++j)
        std::copy(panel.coef(train_idx[r], j), panel.coef(train_idx[r], j) + panel.L(),
                  train.coef(static_cast<int>(r), j));

    for (int j = 0; j < panel.p; ++j) {
      const EigenSystem sys = eigendecompose(empirical_cov(train, j, B), max_m);
      const Mat V = panel.node_values(j, B);
      for (int ti : test_idx) {
        const double* x = V.row(ti);
        std::vector<double> resid(x, x + g);
        int next = 0;
        for (int k = 0; k < max_m; ++k) {
          double a = 0.0;
          for (int t = 0; t < g; ++t)
            a += x[t] * w[static_cast<size_t>(t)] * sys.eigenfunctions(t, k);
          for (int t = 0; t < g; ++t) resid[static_cast<size_t>(t)] -= a * sys.eigenfunctions(t, k);
          while (next < static_cast<int>(sorted_cands.size()) &&
                 sorted_cands[static_cast<size_t>(next)] == k + 1) {
            double e = 0.0;
            for (int t = 0; t < g; ++t)
              e += w[static_cast<size_t>(t)] * resid[static_cast<size_t>(t)] *
                   resid[static_cast<size_t>(t)];
            // record under the original candidate order
            for (size_t c = 0; c < candidates.size(); ++c)
              if (candidates[c] == k + 1) err[c] += e;
            ++next;
          }
        }
      }
      count += static_cast<long>(test_idx.size());
    }
  }
  for (double& e : err) e /= static_cast<double>(count);
  return err;
}

int select_M_cv(const SmoothedPanel& panel, const std::vector<int>& candidates, int folds,
                double tie_fraction) {
  const auto losses = cv_loss_table_M(panel, candidates, folds);
  return select_from_cv_table(candidates, losses, tie_fraction);
}

}  // namespace fudge
