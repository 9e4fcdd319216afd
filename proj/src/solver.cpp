#include "fudge/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fudge/errors.hpp"
#include "fudge/kernels.hpp"

namespace fudge {

namespace {

void check_dims(const DeltaEstimate& d, const ScoreCovariance& sx, const ScoreCovariance& sy) {
  if (sx.p != sy.p || sx.M != sy.M) throw ShapeError("solver: score covariances disagree in shape");
  if (d.p != sx.p || d.M != sx.M)
    throw ShapeError("solver: delta shape does not match score covariances");
}

double largest_eigenvalue(const Mat& s) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      s.data(), s.rows(), s.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

Mat DeltaEstimate::block(int j, int l) const {
  Mat b(M, M);
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) b(r, c) = delta(j * M + r, l * M + c);
  return b;
}

double DeltaEstimate::block_norm(int j, int l) const {
  double s = 0.0;
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) {
      const double v = delta(j * M + r, l * M + c);
      s += v * v;
    }
  return std::sqrt(s);
}

double loss(const DeltaEstimate& d, const ScoreCovariance& sx, const ScoreCovariance& sy) {
  check_dims(d, sx, sy);
  const auto& ops = kernels::active();
  const int dim = d.dim();
  const size_t sz = static_cast<size_t>(dim) * dim;
  // tr[1/2 S_Y D^T S_X D] = 1/2 <D, S_X D S_Y>_F
  Mat t1(dim, dim), t2(dim, dim), diff(dim, dim);
  ops.gemm(sx.S.data(), d.delta.data(), t1.data(), dim, dim, dim);
  ops.gemm(t1.data(), sy.S.data(), t2.data(), dim, dim, dim);
  ops.sub(diff.data(), sy.S.data(), sx.S.data(), static_cast<int>(sz));
  return 0.5 * ops.dot(d.delta.data(), t2.data(), static_cast<int>(sz)) -
         ops.dot(d.delta.data(), diff.data(), static_cast<int>(sz));
}

Mat gradient(const DeltaEstimate& d, const ScoreCovariance& sx, const ScoreCovariance& sy) {
  check_dims(d, sx, sy);
  const auto& ops = kernels::active();
  const int dim = d.dim();
  const size_t sz = static_cast<size_t>(dim) * dim;
  Mat t1(dim, dim), grad(dim, dim), diff(dim, dim);
  ops.gemm(sx.S.data(), d.delta.data(), t1.data(), dim, dim, dim);
  ops.gemm(t1.data(), sy.S.data(), grad.data(), dim, dim, dim);
  ops.sub(diff.data(), sy.S.data(), sx.S.data(), static_cast<int>(sz));
  ops.sub(grad.data(), grad.data(), diff.data(), static_cast<int>(sz));
  return grad;
}

Mat prox_group(const Mat& a, double threshold, int p, int M) {
  if (threshold < 0.0) throw InvalidArgument("prox_group: negative threshold");
  if (a.rows() != p * M || a.cols() != p * M) throw ShapeError("prox_group: matrix is not pM x pM");
  Mat out(p * M, p * M);
  kernels::active().group_soft_threshold(a.data(), out.data(), p, M, threshold);
  return out;
}

std::pair<DeltaEstimate, SolveReport> fit(const ScoreCovariance& sx, const ScoreCovariance& sy,
                                          const SolverConfig& cfg,
                                          const DeltaEstimate* warm_start) {
  if (sx.p != sy.p || sx.M != sy.M) throw ShapeError("fit: score covariances disagree in shape");
  if (cfg.lambda < 0.0) throw InvalidArgument("fit: negative lambda");
  if (cfg.tol <= 0.0) throw InvalidArgument("fit: tol must be positive");
  if (cfg.max_iters < 1) throw InvalidArgument("fit: max_iters must be >= 1");
  if (cfg.step && !(*cfg.step > 0.0)) throw InvalidArgument("fit: step must be positive");

  const auto& ops = kernels::active();
  const int p = sx.p;
  const int M = sx.M;
  const int dim = p * M;
  const int sz = dim * dim;

  double eta;
  if (cfg.step) {
    eta = *cfg.step;
  } else {
    const double lip = largest_eigenvalue(sx.S) * largest_eigenvalue(sy.S);
    eta = lip > 0.0 ? 1.0 / lip : 1.0;
  }

  DeltaEstimate cur(p, M);
  if (warm_start) {
    if (warm_start->p != p || warm_start->M != M) throw ShapeError("fit: warm start shape mismatch");
    cur.delta = warm_start->delta;
  }

  Mat diff(dim, dim);
  ops.sub(diff.data(), sy.S.data(), sx.S.data(), sz);

  Mat t1(dim, dim), sds(dim, dim), step_point(dim, dim);
  DeltaEstimate next(p, M);

  // S_X D S_Y for the current iterate; reused by both the gradient and the
  // objective so each iteration costs one pair of matrix products.
  auto apply_quadratic = [&](const Mat& m, Mat& out) {
    ops.gemm(sx.S.data(), m.data(), t1.data(), dim, dim, dim);
    ops.gemm(t1.data(), sy.S.data(), out.data(), dim, dim, dim);
  };
  auto penalized_objective = [&](const Mat& m, const Mat& quad, double penalty) {
    return 0.5 * ops.dot(m.data(), quad.data(), sz) - ops.dot(m.data(), diff.data(), sz) +
           cfg.lambda * penalty;
  };

  apply_quadratic(cur.delta, sds);
  double pen = 0.0;
  {
    Mat norms(p, p);
    ops.block_frob_norms(cur.delta.data(), p, M, norms.data());
    for (int i = 0; i < p * p; ++i) pen += norms.data()[i];
  }
  double obj = penalized_objective(cur.delta, sds, pen);

  SolveReport report;
  report.step = eta;
  if (cfg.keep_trace) report.trace.push_back(obj);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    // gradient step: A = D - eta * (S_X D S_Y - (S_Y - S_X))
    ops.sub(step_point.data(), sds.data(), diff.data(), sz);
    ops.axpby(step_point.data(), cur.delta.data(), -eta, step_point.data(), sz);
    const double next_pen =
        ops.group_soft_threshold(step_point.data(), next.delta.data(), p, M, cfg.lambda * eta);

    apply_quadratic(next.delta, sds);
    const double next_obj = penalized_objective(next.delta, sds, next_pen);
    if (!std::isfinite(next_obj))
      throw NumericError("fit: objective diverged at iteration " + std::to_string(it));

    std::swap(cur.delta, next.delta);
    report.iterations = it;
    if (cfg.keep_trace) report.trace.push_back(next_obj);
    const bool done = std::abs(next_obj - obj) <= cfg.tol * std::max(1.0, std::abs(obj));
    obj = next_obj;
    if (done) {
      report.converged = true;
      break;
    }
  }
  report.objective = obj;
  return {std::move(cur), std::move(report)};
}

std::vector<std::pair<DeltaEstimate, SolveReport>> lambda_path(const ScoreCovariance& sx,
                                                               const ScoreCovariance& sy,
                                                               const std::vector<double>& lambdas,
                                                               const SolverConfig& cfg) {
  if (lambdas.empty()) throw InvalidArgument("lambda_path: empty grid");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw InvalidArgument("lambda_path: penalties must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
      throw InvalidArgument("lambda_path: grid must be strictly descending");
  }
  std::vector<std::pair<DeltaEstimate, SolveReport>> out;
  out.reserve(lambdas.size());
  const DeltaEstimate* warm = nullptr;
  for (double lam : lambdas) {
    SolverConfig c = cfg;
    c.lambda = lam;
    try {
      out.push_back(fit(sx, sy, c, warm));
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (lambda = " + std::to_string(lam) + ")");
    }
    warm = &out.back().first;
  }
  return out;
}

double lambda_max_bound(const ScoreCovariance& sx, const ScoreCovariance& sy) {
  if (sx.p != sy.p || sx.M != sy.M)
    throw ShapeError("lambda_max_bound: score covariances disagree in shape");
  const int dim = sx.dim();
  Mat diff(dim, dim), norms(sx.p, sx.p);
  kernels::active().sub(diff.data(), sy.S.data(), sx.S.data(), dim * dim);
  kernels::active().block_frob_norms(diff.data(), sx.p, sx.M, norms.data());
  double mx = 0.0;
  for (int i = 0; i < sx.p * sx.p; ++i) mx = std::max(mx, norms.data()[i]);
  return mx;
}

std::vector<double> default_lambda_grid(double lambda_max, int count, double min_ratio) {
  if (count < 1) throw InvalidArgument("lambda grid: count must be >= 1");
  if (!(lambda_max > 0.0)) throw InvalidArgument("lambda grid: lambda_max must be positive");
  if (!(min_ratio > 0.0 && min_ratio <= 1.0))
    throw InvalidArgument("lambda grid: min_ratio must lie in (0, 1]");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double lo = std::log(lambda_max * min_ratio);
  const double hi = std::log(lambda_max);
  for (int i = 0; i < count; ++i)
    grid[static_cast<size_t>(i)] = std::exp(hi + (lo - hi) * static_cast<double>(i) / (count - 1));
  return grid;
}

}  // namespace fudge
