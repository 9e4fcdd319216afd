#pragma once

#include <vector>

#include "fudge/basis.hpp"
#include "fudge/grid.hpp"
#include "fudge/mat.hpp"

namespace fudge {

// A sample of p-variate curves observed (possibly with noise) on a shared
// grid. values holds n * p * |grid| amplitudes, curve (i, j) contiguous.
struct CurvePanel {
  int n = 0;
  int p = 0;
  TimeGrid grid;
  std::vector<double> values;

  CurvePanel() = default;
  CurvePanel(int n_, int p_, TimeGrid grid_);

  int grid_size() const { return grid.size(); }
  size_t curve_offset(int i, int j) const {
    return (static_cast<size_t>(i) * p + j) * grid.size();
  }
  double& at(int i, int j, int k) { return values[curve_offset(i, j) + k]; }
  double at(int i, int j, int k) const { return values[curve_offset(i, j) + k]; }
  const double* curve(int i, int j) const { return values.data() + curve_offset(i, j); }
  double* curve(int i, int j) { return values.data() + curve_offset(i, j); }

  void validate() const;
};

// Panel after projection onto a finite basis: n * p coefficient vectors of
// length basis.dim. The grid is kept so curves can be re-evaluated.
struct SmoothedPanel {
  int n = 0;
  int p = 0;
  BasisSpec basis;
  TimeGrid grid;
  std::vector<double> coefs;  // n * p * L, curve (i, j) contiguous

  int L() const { return basis.dim; }
  size_t coef_offset(int i, int j) const { return (static_cast<size_t>(i) * p + j) * basis.dim; }
  const double* coef(int i, int j) const { return coefs.data() + coef_offset(i, j); }
  double* coef(int i, int j) { return coefs.data() + coef_offset(i, j); }

  // Values of curve (i, j) on the stored grid, using a precomputed basis
  // matrix (as returned by eval_basis for this spec and grid).
  std::vector<double> curve_values(int i, int j, const Mat& basis_matrix) const;

  // n x |grid| matrix of all curves for one node.
  Mat node_values(int j, const Mat& basis_matrix) const;
  Mat node_values(int j) const;
};

}  // namespace fudge
