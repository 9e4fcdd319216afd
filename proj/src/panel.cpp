#include "fudge/panel.hpp"

#include <cmath>

namespace fudge {

CurvePanel::CurvePanel(int n_, int p_, TimeGrid grid_) : n(n_), p(p_), grid(std::move(grid_)) {
  if (n <= 0 || p <= 0) throw InvalidArgument("CurvePanel: n and p must be positive");
  grid.validate();
  values.assign(static_cast<size_t>(n) * p * grid.size(), 0.0);
}

void CurvePanel::validate() const {
  if (n <= 0 || p <= 0) throw InvalidArgument("CurvePanel: n and p must be positive");
  grid.validate();
  if (values.size() != static_cast<size_t>(n) * p * grid.size())
    throw ShapeError("CurvePanel: value buffer does not match n * p * |grid|");
  for (double v : values)
    if (!std::isfinite(v)) throw NumericError("CurvePanel: non-finite value");
}

std::vector<double> SmoothedPanel::curve_values(int i, int j, const Mat& B) const {
  const int g = grid.size();
  const int l = L();
  std::vector<double> out(static_cast<size_t>(g), 0.0);
  const double* c = coef(i, j);
  for (int k = 0; k < g; ++k) {
    double s = 0.0;
    const double* row = B.row(k);
    for (int m = 0; m < l; ++m) s += row[m] * c[m];
    out[static_cast<size_t>(k)] = s;
  }
  return out;
}

Mat SmoothedPanel::node_values(int j, const Mat& B) const {
  const int g = grid.size();
  const int l = L();
  Mat out(n, g);
  for (int i = 0; i < n; ++i) {
    const double* c = coef(i, j);
    double* orow = out.row(i);
    for (int k = 0; k < g; ++k) {
      double s = 0.0;
      const double* brow = B.row(k);
      for (int m = 0; m < l; ++m) s += brow[m] * c[m];
      orow[k] = s;
    }
  }
  return out;
}

Mat SmoothedPanel::node_values(int j) const { return node_values(j, eval_basis(basis, grid)); }

}  // namespace fudge
