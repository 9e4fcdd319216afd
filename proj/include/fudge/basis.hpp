#pragma once

#include <string>

#include "fudge/grid.hpp"
#include "fudge/mat.hpp"

namespace fudge {

enum class BasisKind { bspline, fourier, disjoint_cosine };

// Finite basis used to represent curves. Three families:
//  - bspline(L, degree): clamped B-splines with uniform interior knots,
//    cubic by default;
//  - fourier(L): orthonormal on [0,1], {1, sqrt2 sin(2pi t), sqrt2 cos(2pi t), ...};
//  - disjoint_cosine: the fixed 5-function family of cosine bumps
//    cos(10 pi (t - (2k-1)/10)) + 1 on [(k-1)/5, k/5), zero elsewhere.
struct BasisSpec {
  BasisKind kind = BasisKind::bspline;
  int dim = 5;
  int degree = 3;  // bspline only

  static BasisSpec bspline(int L, int degree = 3) { return {BasisKind::bspline, L, degree}; }
  static BasisSpec fourier(int L) { return {BasisKind::fourier, L, 0}; }
  static BasisSpec disjoint_cosine() { return {BasisKind::disjoint_cosine, 5, 0}; }

  void validate() const;
  std::string name() const;
};

// Basis values over the grid: column k holds the k-th basis function.
Mat eval_basis(const BasisSpec& spec, const TimeGrid& grid);

// Single disjoint-cosine bump, exposed for tests and synthetic data.
double disjoint_cosine_value(int k, double t);

}  // namespace fudge
