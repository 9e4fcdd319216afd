#include "fudge/basis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fudge {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Clamped knot vector with uniform interior knots: L + degree + 1 values.
std::vector<double> bspline_knots(int L, int degree, double t0, double t1) {
  const int d = degree;
  std::vector<double> knots(static_cast<size_t>(L) + d + 1);
  for (int i = 0; i <= d; ++i) knots[i] = t0;
  const int interior = L - d - 1;
  for (int m = 1; m <= interior; ++m)
    knots[static_cast<size_t>(d) + m] = t0 + (t1 - t0) * static_cast<double>(m) / (interior + 1);
  for (int i = 0; i <= d; ++i) knots[static_cast<size_t>(L) + i] = t1;
  return knots;
}

// Values of all L clamped B-spline basis functions at x (Cox-de Boor).
void bspline_row(double x, int L, int degree, const std::vector<double>& knots, double* out) {
  const int d = degree;
  int span;
  if (x >= knots[static_cast<size_t>(L)]) {
    span = L - 1;
  } else if (x <= knots[static_cast<size_t>(d)]) {
    span = d;
  } else {
    const auto it = std::upper_bound(knots.begin() + d, knots.begin() + L + 1, x);
    span = static_cast<int>(it - knots.begin()) - 1;
  }
  std::vector<double> left(static_cast<size_t>(d) + 1), right(static_cast<size_t>(d) + 1),
      vals(static_cast<size_t>(d) + 1);
  vals[0] = 1.0;
  for (int j = 1; j <= d; ++j) {
    left[j] = x - knots[static_cast<size_t>(span) + 1 - j];
    right[j] = knots[static_cast<size_t>(span) + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double den = right[r + 1] + left[j - r];
      const double temp = den != 0.0 ? vals[r] / den : 0.0;
      vals[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    vals[j] = saved;
  }
  std::fill(out, out + L, 0.0);
  for (int j = 0; j <= d; ++j) out[span - d + j] = vals[j];
}

}  // namespace

void BasisSpec::validate() const {
  switch (kind) {
    case BasisKind::bspline:
      if (dim < 1) throw InvalidArgument("bspline basis: L must be >= 1");
      if (degree < 0) throw InvalidArgument("bspline basis: negative degree");
      if (degree >= dim)
        throw InvalidArgument("bspline basis: degree " + std::to_string(degree) +
                              " must be smaller than L = " + std::to_string(dim));
      break;
    case BasisKind::fourier:
      if (dim < 1) throw InvalidArgument("fourier basis: L must be >= 1");
      break;
    case BasisKind::disjoint_cosine:
      if (dim != 5) throw InvalidArgument("disjoint-cosine basis: dimension is fixed at 5");
      break;
  }
}

std::string BasisSpec::name() const {
  switch (kind) {
    case BasisKind::bspline:
      return "bspline(L=" + std::to_string(dim) + ",degree=" + std::to_string(degree) + ")";
    case BasisKind::fourier:
      return "fourier(L=" + std::to_string(dim) + ")";
    case BasisKind::disjoint_cosine:
      return "disjoint-cosine(5)";
  }
  return "?";
}

double disjoint_cosine_value(int k, double t) {
  // k is 0-based; bump k occupies [k/5, (k+1)/5).
  const double lo = static_cast<double>(k) / 5.0;
  const double hi = static_cast<double>(k + 1) / 5.0;
  if (!(t >= lo && t < hi)) return 0.0;
  const double center = (2.0 * (k + 1) - 1.0) / 10.0;
  return std::cos(10.0 * kPi * (t - center)) + 1.0;
}

Mat eval_basis(const BasisSpec& spec, const TimeGrid& grid) {
  spec.validate();
  grid.validate();
  const int g = grid.size();
  const int L = spec.dim;
  Mat B(g, L);

  switch (spec.kind) {
    case BasisKind::disjoint_cosine: {
      for (int i = 0; i < g; ++i)
        for (int k = 0; k < 5; ++k) B(i, k) = disjoint_cosine_value(k, grid[i]);
      break;
    }
    case BasisKind::fourier: {
      const double sqrt2 = std::sqrt(2.0);
      for (int i = 0; i < g; ++i) {
        const double t = grid[i];
        B(i, 0) = 1.0;
        for (int c = 1; c < L; ++c) {
          const int k = (c + 1) / 2;
          const double arg = 2.0 * kPi * k * t;
          B(i, c) = (c % 2 == 1) ? sqrt2 * std::sin(arg) : sqrt2 * std::cos(arg);
        }
      }
      break;
    }
    case BasisKind::bspline: {
      const double t0 = grid[0];
      const double t1 = grid[g - 1];
      const auto knots = bspline_knots(L, spec.degree, t0, t1);
      for (int i = 0; i < g; ++i) bspline_row(grid[i], L, spec.degree, knots, B.row(i));
      break;
    }
  }
  return B;
}

}  // namespace fudge
