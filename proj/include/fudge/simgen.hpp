#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "fudge/basis.hpp"
#include "fudge/diffgraph.hpp"
#include "fudge/mat.hpp"
#include "fudge/panel.hpp"

namespace fudge {

enum class SimModel { model1, model2, model3, fourier_diag };

const char* sim_model_name(SimModel m);
SimModel sim_model_from_name(const std::string& name);

// Per-node coefficient blocks are 5 x 5 in every synthetic model.
inline constexpr int kSimBlockDim = 5;

struct GenMetadata {
  std::string model;
  int p = 0;
  uint64_t seed = 0;
  double block_constant = 0.0;   // c of the differential blocks (post-scaling)
  double off_diag_scale = 1.0;   // scaling applied to off-diagonal support blocks
  double shift = 0.0;            // eigenvalue shift applied to both matrices
  double ridge = 0.0;
  bool extrapolated = false;     // p outside the published constant table
  int support_edges = 0;         // edges of the first population's graph
  int hub_count = 0;             // model 1 only
};

// Pair of 5p x 5p precision matrices and the node pairs whose blocks differ.
struct PrecisionPair {
  Mat omega_x;
  Mat omega_y;
  EdgeSet true_diff;
  GenMetadata meta;
};

// Model 1: power-law support with round(p(p-1)/10) edges; hub edges of the
// second population are perturbed by a band-zero constant block.
PrecisionPair gen_model1(int p, uint64_t seed);

// Model 2: block-tridiagonal support (0.6, 0.4 off-diagonals); the second
// population adds four lag-3 blocks.
PrecisionPair gen_model2(int p, uint64_t seed);

// Model 3: Erdos-Renyi support at density 0.8; the second population adds
// a few random new edges.
PrecisionPair gen_model3(int p, uint64_t seed);

// Model 2 skeleton with diagonal difference blocks, paired with a Fourier
// basis so the differential signal is visible pointwise in time.
PrecisionPair gen_fourier_diag(int p, uint64_t seed);

PrecisionPair generate(SimModel model, int p, uint64_t seed);

// Curve basis each model's data are synthesized from.
BasisSpec basis_for_model(SimModel model);

struct SimModelSpec {
  SimModel model = SimModel::model2;
  int p = 30;
  int n = 100;
  double sigma = 0.5;
  uint64_t seed = 1;
};

// Draws coefficient vectors from N(0, Omega^-1), evaluates the curves on
// the grid and adds iid N(0, sigma^2) observation noise. All randomness
// derives from spec.seed through named substreams.
std::pair<CurvePanel, CurvePanel> sample_panels(const PrecisionPair& pair, const SimModelSpec& spec,
                                                const BasisSpec& basis,
                                                const TimeGrid& grid = TimeGrid::uniform(200));

}  // namespace fudge
