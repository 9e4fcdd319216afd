#include "fudge/simgen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "fudge/errors.hpp"
#include "fudge/rng.hpp"

namespace fudge {

namespace {

constexpr int B = kSimBlockDim;
constexpr double kRidge = 0.05;

const char* kModelNames[] = {"model1", "model2", "model3", "fourier-diag"};

void set_block(Mat& omega, int j, int l, const Mat& blk) {
  for (int r = 0; r < B; ++r)
    for (int c = 0; c < B; ++c) omega(j * B + r, l * B + c) = blk(r, c);
}

void set_block_pair(Mat& omega, int j, int l, const Mat& blk) {
  set_block(omega, j, l, blk);
  if (j != l) {
    Mat t(B, B);
    for (int r = 0; r < B; ++r)
      for (int c = 0; c < B; ++c) t(r, c) = blk(c, r);
    set_block(omega, l, j, t);
  }
}

Mat scaled_identity_block(double v) {
  Mat blk(B, B);
  for (int r = 0; r < B; ++r) blk(r, r) = v;
  return blk;
}

// Constant block with a zeroed band: entries are c where |k - m| > band.
Mat banded_zero_block(double c, int band) {
  Mat blk(B, B);
  for (int r = 0; r < B; ++r)
    for (int m = 0; m < B; ++m) blk(r, m) = std::abs(r - m) <= band ? 0.0 : c;
  return blk;
}

double min_eigenvalue(const Mat& m) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> e(
      m.data(), m.rows(), m.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Shift both matrices by max(|min(lambda_min, 0)|) plus a fixed ridge so
// sampling can factorize them.
void make_positive_definite(PrecisionPair& pair) {
  const double mn_x = min_eigenvalue(pair.omega_x);
  const double mn_y = min_eigenvalue(pair.omega_y);
  const double shift = std::max(std::abs(std::min(mn_x, 0.0)), std::abs(std::min(mn_y, 0.0)));
  const double total = shift + kRidge;
  for (int i = 0; i < pair.omega_x.rows(); ++i) {
    pair.omega_x(i, i) += total;
    pair.omega_y(i, i) += total;
  }
  pair.meta.shift = shift;
  pair.meta.ridge = kRidge;
}

// Differential edges recomputed from the final matrices; generation is
// arranged so untouched blocks stay bit-identical between the populations.
EdgeSet diff_edges_from_blocks(const Mat& ox, const Mat& oy, int p) {
  EdgeSet out(p);
  for (int j = 0; j < p; ++j)
    for (int l = j + 1; l < p; ++l) {
      bool differs = false;
      for (int r = 0; r < B && !differs; ++r)
        for (int c = 0; c < B && !differs; ++c)
          if (ox(j * B + r, l * B + c) != oy(j * B + r, l * B + c) ||
              ox(l * B + r, j * B + c) != oy(l * B + r, j * B + c))
            differs = true;
      if (differs) out.add(j, l);
    }
  return out;
}

struct ScaleEntry {
  int p;
  double value;
};

double lookup_or(const ScaleEntry* table, int count, int p, double fallback, bool* extrapolated) {
  for (int i = 0; i < count; ++i)
    if (table[i].p == p) return table[i].value;
  *extrapolated = true;
  return fallback;
}

double model1_scale(int p, bool* ex) {
  static const ScaleEntry t[] = {{30, 1.0 / 2}, {60, 1.0 / 3}, {90, 1.0 / 4}, {120, 1.0 / 5}};
  return lookup_or(t, 4, p, 5.0 / p, ex);
}

double model2_c(int p, bool* ex) {
  static const ScaleEntry t[] = {{30, 1.0 / 10}, {60, 1.0 / 15}, {90, 1.0 / 20}, {120, 1.0 / 25}};
  return lookup_or(t, 4, p, 6.0 / (30.0 + p), ex);
}

double model3_c(int p, bool* ex) {
  static const ScaleEntry t[] = {{30, 2.0 / 5}, {60, 4.0 / 15}, {90, 1.0 / 5}, {120, 4.0 / 25}};
  return lookup_or(t, 4, p, 24.0 / (30.0 + p), ex);
}

int model3_s(int p, bool* ex) {
  static const ScaleEntry t[] = {{30, 3}, {60, 4}, {90, 5}, {120, 6}};
  return static_cast<int>(lookup_or(t, 4, p, std::max(1.0, std::round(2.0 + p / 30.0)), ex));
}

double fourier_scale(int p, bool* ex) {
  static const ScaleEntry t[] = {{30, 1.0 / 2}, {60, 1.0 / 3}, {90, 1.0 / 4}};
  // The constant table stops at p = 90; 30/(30+p) extends it (1/5 at p = 120).
  return lookup_or(t, 3, p, 30.0 / (30.0 + p), ex);
}

// Tridiagonal block skeleton shared by model 2 and the Fourier variant.
Mat tri_block_skeleton(int p) {
  Mat omega(p * B, p * B);
  for (int j = 0; j < p; ++j) set_block(omega, j, j, scaled_identity_block(1.0));
  for (int j = 0; j + 1 < p; ++j) set_block_pair(omega, j, j + 1, scaled_identity_block(0.6));
  for (int j = 0; j + 2 < p; ++j) set_block_pair(omega, j, j + 2, scaled_identity_block(0.4));
  return omega;
}

PrecisionPair finish(Mat ox, Mat oy, GenMetadata meta, int p) {
  PrecisionPair pair;
  pair.omega_x = std::move(ox);
  pair.omega_y = std::move(oy);
  pair.meta = std::move(meta);
  make_positive_definite(pair);
  pair.true_diff = diff_edges_from_blocks(pair.omega_x, pair.omega_y, p);
  return pair;
}

}  // namespace

const char* sim_model_name(SimModel m) { return kModelNames[static_cast<int>(m)]; }

SimModel sim_model_from_name(const std::string& name) {
  for (int i = 0; i < 4; ++i)
    if (name == kModelNames[i]) return static_cast<SimModel>(i);
  throw InvalidArgument("unknown model '" + name + "'");
}

PrecisionPair gen_model2(int p, uint64_t seed) {
  if (p < 8) throw InvalidArgument("model2: p must be >= 8");
  GenMetadata meta;
  meta.model = sim_model_name(SimModel::model2);
  meta.p = p;
  meta.seed = seed;
  bool ex = false;
  const double c = model2_c(p, &ex);
  meta.block_constant = c;
  meta.extrapolated = ex;

  Mat ox = tri_block_skeleton(p);
  meta.support_edges = (p - 1) + (p - 2);
  Mat oy = ox;
  const Mat w = banded_zero_block(c, 1);
  for (int j = 0; j < 4; ++j) set_block_pair(oy, j, j + 3, w);
  return finish(std::move(ox), std::move(oy), std::move(meta), p);
}

PrecisionPair gen_fourier_diag(int p, uint64_t seed) {
  if (p < 8) throw InvalidArgument("fourier-diag: p must be >= 8");
  GenMetadata meta;
  meta.model = sim_model_name(SimModel::fourier_diag);
  meta.p = p;
  meta.seed = seed;
  bool ex = false;
  const double scale = fourier_scale(p, &ex);
  meta.off_diag_scale = scale;
  meta.extrapolated = ex;

  Rng rng = Rng(seed).substream("structure");
  const double c = rng.uniform(0.6, 1.0) * scale;
  meta.block_constant = c;

  Mat ox = tri_block_skeleton(p);
  meta.support_edges = (p - 1) + (p - 2);
  Mat oy = ox;
  const Mat w = scaled_identity_block(c);
  for (int j = 0; j < 4; ++j) set_block_pair(oy, j, j + 3, w);
  return finish(std::move(ox), std::move(oy), std::move(meta), p);
}

PrecisionPair gen_model3(int p, uint64_t seed) {
  if (p < 10) throw InvalidArgument("model3: p must be >= 10");
  GenMetadata meta;
  meta.model = sim_model_name(SimModel::model3);
  meta.p = p;
  meta.seed = seed;
  bool ex = false;
  const double c = model3_c(p, &ex);
  const int s = model3_s(p, &ex);
  meta.block_constant = c;
  meta.extrapolated = ex;

  Rng rng = Rng(seed).substream("structure");
  Mat ox(p * B, p * B);
  for (int j = 0; j < p; ++j) set_block(ox, j, j, scaled_identity_block(1.0));
  std::vector<std::pair<int, int>> absent;
  int support = 0;
  const Mat present = scaled_identity_block(0.1);
  for (int j = 0; j < p; ++j)
    for (int l = j + 1; l < p; ++l) {
      if (rng.bernoulli(0.8)) {
        set_block_pair(ox, j, l, present);
        ++support;
      } else {
        absent.emplace_back(j, l);
      }
    }
  meta.support_edges = support;

  if (static_cast<int>(absent.size()) < s)
    throw GenerationError("model3: fewer than s absent edges available");
  rng.shuffle(absent);
  absent.resize(static_cast<size_t>(s));
  std::sort(absent.begin(), absent.end());

  Mat oy = ox;
  const Mat w = banded_zero_block(c, 1);
  for (const auto& [j, l] : absent) set_block_pair(oy, j, l, w);
  return finish(std::move(ox), std::move(oy), std::move(meta), p);
}

PrecisionPair gen_model1(int p, uint64_t seed) {
  if (p < 10) throw InvalidArgument("model1: p must be >= 10");
  GenMetadata meta;
  meta.model = sim_model_name(SimModel::model1);
  meta.p = p;
  meta.seed = seed;
  bool ex = false;
  const double scale = model1_scale(p, &ex);
  meta.off_diag_scale = scale;
  meta.extrapolated = ex;

  const int target = static_cast<int>(std::lround(p * (p - 1) / 10.0));
  Rng rng = Rng(seed).substream("structure");

  // Preferential attachment gives the heavy-tailed degree profile; random
  // additions/removals then pin the edge count exactly.
  std::set<std::pair<int, int>> edges;
  std::vector<int> degree(static_cast<size_t>(p), 0);
  auto add_edge = [&](int a, int b) {
    const auto e = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (edges.insert(e).second) {
      ++degree[static_cast<size_t>(a)];
      ++degree[static_cast<size_t>(b)];
      return true;
    }
    return false;
  };
  const int m = std::max(1, static_cast<int>(std::lround(static_cast<double>(target) / p)));
  const int m0 = std::min(p, m + 1);
  for (int a = 0; a < m0; ++a)
    for (int b = a + 1; b < m0; ++b) add_edge(a, b);
  for (int v = m0; v < p; ++v) {
    int attached = 0;
    int guard = 0;
    while (attached < m && guard < 1000) {
      ++guard;
      long total = 0;
      for (int u = 0; u < v; ++u) total += degree[static_cast<size_t>(u)] + 1;
      long pick = rng.uniform_int(0, total - 1);
      int u = 0;
      for (; u < v; ++u) {
        pick -= degree[static_cast<size_t>(u)] + 1;
        if (pick < 0) break;
      }
      if (u != v && add_edge(v, u)) ++attached;
    }
  }
  auto pairs_snapshot = [&]() {
    return std::vector<std::pair<int, int>>(edges.begin(), edges.end());
  };
  while (static_cast<int>(edges.size()) > target) {
    auto snap = pairs_snapshot();
    const auto victim = snap[static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(snap.size()) - 1))];
    edges.erase(victim);
    --degree[static_cast<size_t>(victim.first)];
    --degree[static_cast<size_t>(victim.second)];
  }
  while (static_cast<int>(edges.size()) < target) {
    const int a = static_cast<int>(rng.uniform_int(0, p - 1));
    const int b = static_cast<int>(rng.uniform_int(0, p - 1));
    if (a != b) add_edge(a, b);
  }
  meta.support_edges = static_cast<int>(edges.size());

  // Support blocks: delta' I with delta' uniform on +-[0.2, 0.5], scaled.
  Mat ox(p * B, p * B);
  for (int j = 0; j < p; ++j) set_block(ox, j, j, scaled_identity_block(1.0));
  std::vector<std::pair<int, int>> edge_list(edges.begin(), edges.end());
  std::vector<double> magnitude(edge_list.size(), 0.0);
  for (size_t e = 0; e < edge_list.size(); ++e) {
    const double mag = rng.uniform(0.2, 0.5);
    const double val = (rng.bernoulli(0.5) ? 1.0 : -1.0) * mag * scale;
    magnitude[e] = std::abs(val);
    set_block_pair(ox, edge_list[e].first, edge_list[e].second, scaled_identity_block(val));
  }

  // Hubs: top ceil(0.1 p) nodes by degree; per hub perturb its strongest
  // 20% of incident edges.
  std::vector<int> order(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degree[static_cast<size_t>(a)] > degree[static_cast<size_t>(b)]; });
  const int hub_count = static_cast<int>(std::ceil(0.1 * p));
  meta.hub_count = hub_count;

  std::set<std::pair<int, int>> selected;
  for (int h = 0; h < hub_count; ++h) {
    const int hub = order[static_cast<size_t>(h)];
    std::vector<size_t> incident;
    for (size_t e = 0; e < edge_list.size(); ++e)
      if (edge_list[e].first == hub || edge_list[e].second == hub) incident.push_back(e);
    if (incident.empty()) continue;
    std::stable_sort(incident.begin(), incident.end(),
                     [&](size_t a, size_t b) { return magnitude[a] > magnitude[b]; });
    const int take = static_cast<int>(std::ceil(0.2 * static_cast<double>(incident.size())));
    for (int k = 0; k < take; ++k) selected.insert(edge_list[incident[static_cast<size_t>(k)]]);
  }

  Mat oy = ox;
  for (const auto& [j, l] : selected) {
    const double mag = rng.uniform(0.2, 0.5);
    const double c = (rng.bernoulli(0.5) ? 1.0 : -1.0) * mag;
    const Mat w = banded_zero_block(c, 2);
    Mat cur(B, B);
    for (int r = 0; r < B; ++r)
      for (int cc = 0; cc < B; ++cc) cur(r, cc) = ox(j * B + r, l * B + cc) + w(r, cc);
    set_block_pair(oy, j, l, cur);
  }
  return finish(std::move(ox), std::move(oy), std::move(meta), p);
}

PrecisionPair generate(SimModel model, int p, uint64_t seed) {
  switch (model) {
    case SimModel::model1:
      return gen_model1(p, seed);
    case SimModel::model2:
      return gen_model2(p, seed);
    case SimModel::model3:
      return gen_model3(p, seed);
    case SimModel::fourier_diag:
      return gen_fourier_diag(p, seed);
  }
  throw InvalidArgument("generate: unknown model");
}

BasisSpec basis_for_model(SimModel model) {
  return model == SimModel::fourier_diag ? BasisSpec::fourier(5) : BasisSpec::disjoint_cosine();
}

namespace {

CurvePanel sample_one(const Mat& omega, int p, int n, double sigma, const BasisSpec& basis,
                      const TimeGrid& grid, Rng coeff_rng, Rng noise_rng) {
  const int dim = p * B;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> om(
      omega.data(), dim, dim);
  Eigen::LLT<Eigen::MatrixXd> llt(om);
  if (llt.info() != Eigen::Success)
    throw NumericError("sample_panels: precision matrix is not positive definite");

  const Mat basis_values = eval_basis(basis, grid);
  const int g = grid.size();
  CurvePanel panel(n, p, grid);
  Eigen::VectorXd z(dim);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < dim; ++d) z(d) = coeff_rng.normal();
    // x = U^-1 z has covariance (U^T U)^-1 = Omega^-1 for Omega = L L^T.
    const Eigen::VectorXd coef = llt.matrixU().solve(z);
    for (int j = 0; j < p; ++j) {
      double* curve = panel.curve(i, j);
      for (int k = 0; k < g; ++k) {
        double s = 0.0;
        for (int mcomp = 0; mcomp < B; ++mcomp) s += basis_values(k, mcomp) * coef(j * B + mcomp);
        curve[k] = s;
      }
    }
  }
  if (sigma > 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) {
        double* curve = panel.curve(i, j);
        for (int k = 0; k < g; ++k) curve[k] += sigma * noise_rng.normal();
      }
  }
  return panel;
}

}  // namespace

std::pair<CurvePanel, CurvePanel> sample_panels(const PrecisionPair& pair, const SimModelSpec& spec,
                                                const BasisSpec& basis, const TimeGrid& grid) {
  basis.validate();
  if (basis.dim != B) throw InvalidArgument("sample_panels: basis dimension must be 5");
  if (spec.n < 1) throw InvalidArgument("sample_panels: n must be >= 1");
  if (spec.sigma < 0.0) throw InvalidArgument("sample_panels: negative noise level");
  const int p = pair.meta.p;
  const Rng root(spec.seed);
  CurvePanel x = sample_one(pair.omega_x, p, spec.n, spec.sigma, basis, grid,
                            root.substream("coeff_x"), root.substream("noise_x"));
  CurvePanel y = sample_one(pair.omega_y, p, spec.n, spec.sigma, basis, grid,
                            root.substream("coeff_y"), root.substream("noise_y"));
  return {std::move(x), std::move(y)};
}

}  // namespace fudge
