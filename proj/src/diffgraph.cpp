#include "fudge/diffgraph.hpp"

#include <cmath>
#include <string>

#include "fudge/errors.hpp"
#include "fudge/kernels.hpp"

namespace fudge {

EdgeSet threshold_edges(const DeltaEstimate& delta, double epsilon) {
  if (epsilon < 0.0) throw InvalidArgument("threshold_edges: negative epsilon");
  Mat norms(delta.p, delta.p);
  kernels::active().block_frob_norms(delta.delta.data(), delta.p, delta.M, norms.data());
  EdgeSet out(delta.p);
  for (int j = 0; j < delta.p; ++j)
    for (int l = j + 1; l < delta.p; ++l)
      if (norms(j, l) > epsilon || norms(l, j) > epsilon) out.add(j, l);
  return out;
}

Mat block_norm_scores(const DeltaEstimate& delta) {
  Mat norms(delta.p, delta.p);
  kernels::active().block_frob_norms(delta.delta.data(), delta.p, delta.M, norms.data());
  Mat scores(delta.p, delta.p);
  for (int j = 0; j < delta.p; ++j)
    for (int l = 0; l < delta.p; ++l)
      scores(j, l) = j == l ? 0.0 : std::max(norms(j, l), norms(l, j));
  return scores;
}

std::vector<int> vote_time_indices(int grid_size, int T) {
  if (T < 1) throw InvalidArgument("vote_time_indices: T must be >= 1");
  if (T > grid_size) throw InvalidArgument("vote_time_indices: T exceeds grid size");
  std::vector<int> idx(static_cast<size_t>(T));
  if (T == 1) {
    idx[0] = (grid_size - 1) / 2;
    return idx;
  }
  for (int g = 0; g < T; ++g)
    idx[static_cast<size_t>(g)] = static_cast<int>(
        std::lround(static_cast<double>(g) * (grid_size - 1) / static_cast<double>(T - 1)));
  return idx;
}

ScoreCovariance pointwise_covariance(const CurvePanel& panel, int grid_index) {
  const int n = panel.n;
  const int p = panel.p;
  if (n < 2) throw InsufficientSampleError("pointwise_covariance: need at least 2 samples");
  std::vector<double> mean(static_cast<size_t>(p), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) mean[static_cast<size_t>(j)] += panel.at(i, j, grid_index);
  for (double& m : mean) m /= n;

  ScoreCovariance cov;
  cov.p = p;
  cov.M = 1;
  cov.S = Mat(p, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      const double xj = panel.at(i, j, grid_index) - mean[static_cast<size_t>(j)];
      for (int l = j; l < p; ++l) {
        const double xl = panel.at(i, l, grid_index) - mean[static_cast<size_t>(l)];
        cov.S(j, l) += xj * xl;
      }
    }
  }
  for (int j = 0; j < p; ++j)
    for (int l = j; l < p; ++l) {
      const double v = cov.S(j, l) / n;
      cov.S(j, l) = v;
      cov.S(l, j) = v;
    }
  return cov;
}

std::vector<Mat> vote_counts(const CurvePanel& panel_x, const CurvePanel& panel_y,
                             const VoteConfig& vote, const std::vector<double>& lambdas,
                             const SolverConfig& solver) {
  if (!(panel_x.grid == panel_y.grid))
    throw GridMismatchError("vote_counts: panels observed on different grids");
  if (panel_x.p != panel_y.p) throw ShapeError("vote_counts: panels disagree in p");
  const auto times = vote_time_indices(panel_x.grid_size(), vote.T);
  const int p = panel_x.p;

  std::vector<Mat> votes(lambdas.size(), Mat(p, p));
  for (int t : times) {
    ScoreCovariance sx, sy;
    try {
      sx = pointwise_covariance(panel_x, t);
      sy = pointwise_covariance(panel_y, t);
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (time index " + std::to_string(t) + ")");
    }
    const DeltaEstimate* warm = nullptr;
    DeltaEstimate prev;
    for (size_t li = 0; li < lambdas.size(); ++li) {
      SolverConfig cfg = solver;
      cfg.lambda = lambdas[li];
      std::pair<DeltaEstimate, SolveReport> sol;
      try {
        sol = fit(sx, sy, cfg, warm);
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " (time index " + std::to_string(t) + ")");
      }
      const EdgeSet edges = threshold_edges(sol.first, 0.0);
      for (const auto& [j, l] : edges.edges) {
        votes[li](j, l) += 1.0;
        votes[li](l, j) += 1.0;
      }
      prev = std::move(sol.first);
      warm = &prev;
    }
  }
  return votes;
}

EdgeSet voted_edges(const Mat& votes, int T, int p) {
  EdgeSet out(p);
  const double needed = static_cast<double>(T) / 2.0;
  for (int j = 0; j < p; ++j)
    for (int l = j + 1; l < p; ++l)
      if (votes(j, l) > needed) out.add(j, l);
  return out;
}

EdgeSet majority_vote_estimate(const CurvePanel& panel_x, const CurvePanel& panel_y,
                               const VoteConfig& vote, double lambda, const SolverConfig& solver) {
  if (!(lambda > 0.0)) throw InvalidArgument("majority_vote_estimate: lambda must be positive");
  const auto votes = vote_counts(panel_x, panel_y, vote, {lambda}, solver);
  return voted_edges(votes[0], vote.T, panel_x.p);
}

}  // namespace fudge
