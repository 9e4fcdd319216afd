#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fudge/errors.hpp"

namespace fudge {

// Common observation grid for a panel of curves: strictly increasing time
// values, at least two of them. Integrals over the domain are approximated
// with trapezoid weights throughout the library.
struct TimeGrid {
  std::vector<double> points;

  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> pts) : points(std::move(pts)) { validate(); }

  static TimeGrid uniform(int n, double t0 = 0.0, double t1 = 1.0) {
    if (n < 2) throw InvalidArgument("TimeGrid: need at least 2 points");
    if (!(t1 > t0)) throw InvalidArgument("TimeGrid: t1 must exceed t0");
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
    pts.back() = t1;
    return TimeGrid(std::move(pts));
  }

  int size() const { return static_cast<int>(points.size()); }
  double operator[](int i) const { return points[static_cast<size_t>(i)]; }

  void validate() const {
    if (points.size() < 2) throw InvalidArgument("TimeGrid: need at least 2 points");
    for (size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i])) throw InvalidArgument("TimeGrid: non-finite point");
      if (i > 0 && !(points[i] > points[i - 1]))
        throw InvalidArgument("TimeGrid: points must be strictly increasing");
    }
  }

  std::vector<double> trapezoid_weights() const {
    const int g = size();
    std::vector<double> w(g);
    w[0] = 0.5 * (points[1] - points[0]);
    for (int i = 1; i + 1 < g; ++i) w[i] = 0.5 * (points[i + 1] - points[i - 1]);
    w[g - 1] = 0.5 * (points[g - 1] - points[g - 2]);
    return w;
  }

  bool operator==(const TimeGrid& o) const { return points == o.points; }
};

}  // namespace fudge
