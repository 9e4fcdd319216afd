#pragma once

#include <set>
#include <utility>
#include <vector>

#include "fudge/panel.hpp"
#include "fudge/solver.hpp"

namespace fudge {

// Undirected edge set over p nodes, stored 0-indexed with canonical
// (min, max) pairs and no self loops.
struct EdgeSet {
  int p = 0;
  std::set<std::pair<int, int>> edges;

  EdgeSet() = default;
  explicit EdgeSet(int p_) : p(p_) {}

  void add(int j, int l) {
    if (j == l) throw InvalidArgument("EdgeSet: self loop");
    if (j < 0 || l < 0 || j >= p || l >= p) throw InvalidArgument("EdgeSet: node out of range");
    edges.insert(j < l ? std::make_pair(j, l) : std::make_pair(l, j));
  }
  bool contains(int j, int l) const {
    return edges.count(j < l ? std::make_pair(j, l) : std::make_pair(l, j)) > 0;
  }
  int size() const { return static_cast<int>(edges.size()); }
  bool operator==(const EdgeSet& o) const { return p == o.p && edges == o.edges; }
};

struct VoteConfig {
  int T = 15;  // number of equally spaced grid indices, endpoints included
};

// Edge rule on a difference estimate: (j, l) is included when either the
// (j, l) or the (l, j) block has Frobenius norm above epsilon.
EdgeSet threshold_edges(const DeltaEstimate& delta, double epsilon);

// Symmetric p x p edge scores max(||D_jl||_F, ||D_lj||_F), zero diagonal.
Mat block_norm_scores(const DeltaEstimate& delta);

// Indices of T equally spaced grid points (both endpoints when T >= 2).
std::vector<int> vote_time_indices(int grid_size, int T);

// Per-penalty vote tallies for the pointwise baseline: at each of the T
// time points the two cross-sectional covariance matrices are formed and a
// one-component (M = 1) fit is thresholded at zero; votes count, per node
// pair, the time points whose per-point estimate keeps the edge.
std::vector<Mat> vote_counts(const CurvePanel& panel_x, const CurvePanel& panel_y,
                             const VoteConfig& vote, const std::vector<double>& lambdas,
                             const SolverConfig& solver);

// Edges with a strict majority of the T votes.
EdgeSet voted_edges(const Mat& votes, int T, int p);

// Pointwise baseline at a single penalty: per-time estimates aggregated by
// strict majority vote.
EdgeSet majority_vote_estimate(const CurvePanel& panel_x, const CurvePanel& panel_y,
                               const VoteConfig& vote, double lambda, const SolverConfig& solver);

// Cross-sectional covariance (divisor n, centered, symmetrized) of the
// panel values at one grid index.
ScoreCovariance pointwise_covariance(const CurvePanel& panel, int grid_index);

}  // namespace fudge
