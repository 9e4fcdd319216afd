#pragma once

#include <vector>

#include "fudge/errors.hpp"

namespace fudge {

// Shared selection rule for cross-validated dimension choices. The winner
// is the smallest candidate whose loss lies within tie_fraction of the
// loss range above the minimum; losses that close are treated as ties,
// and ties break toward the smaller dimension.
inline int select_from_cv_table(const std::vector<int>& candidates,
                                const std::vector<double>& losses,
                                double tie_fraction = 0.01) {
  if (candidates.empty()) throw InvalidArgument("cv selection: empty candidate list");
  if (candidates.size() != losses.size())
    throw InvalidArgument("cv selection: candidates and losses differ in length");
  double lo = losses[0], hi = losses[0];
  for (double v : losses) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const double band = lo + tie_fraction * (hi - lo);
  int best = -1;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (losses[i] <= band && (best < 0 || candidates[i] < best)) best = candidates[i];
  }
  return best;
}

}  // namespace fudge
