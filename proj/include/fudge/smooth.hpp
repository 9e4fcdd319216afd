#pragma once

#include <vector>

#include "fudge/basis.hpp"
#include "fudge/panel.hpp"

namespace fudge {

// Per-curve least-squares projection of the observed values onto the basis.
// Requires |grid| >= L; throws RankError when the basis design is rank
// deficient on the grid.
SmoothedPanel smooth(const CurvePanel& panel, const BasisSpec& spec);

// Mean held-out squared prediction error per candidate basis dimension.
// Folds partition grid points (interleaved), each curve is refit on the
// training points and scored on the held-out points.
std::vector<double> cv_loss_table_L(const CurvePanel& panel, const std::vector<int>& candidates,
                                    int folds, BasisKind family = BasisKind::bspline,
                                    int degree = 3);

// Cross-validated basis dimension; ties (see cv.hpp) break toward smaller L.
int select_L_cv(const CurvePanel& panel, const std::vector<int>& candidates, int folds,
                BasisKind family = BasisKind::bspline, int degree = 3,
                double tie_fraction = 0.01);

}  // namespace fudge
