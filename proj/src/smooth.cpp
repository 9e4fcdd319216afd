#include "fudge/smooth.hpp"

#include <Eigen/Dense>

#include "fudge/cv.hpp"
#include "fudge/errors.hpp"

namespace fudge {

namespace {

Eigen::MatrixXd to_eigen(const Mat& m) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      m.data(), m.rows(), m.cols());
}

}  // namespace

SmoothedPanel smooth(const CurvePanel& panel, const BasisSpec& spec) {
  spec.validate();
  const int g = panel.grid_size();
  const int L = spec.dim;
  if (g < L)
    throw InvalidArgument("smooth: grid has " + std::to_string(g) + " points, fewer than L = " +
                          std::to_string(L));

  const Eigen::MatrixXd B = to_eigen(eval_basis(spec, panel.grid));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
  if (qr.rank() < L)
    throw RankError("smooth: rank-deficient design for basis " + spec.name());

  const long nc = static_cast<long>(panel.n) * panel.p;
  // Curves are stored contiguously, so the panel buffer maps directly onto a
  // column-major |grid| x (n*p) matrix with one curve per column.
  Eigen::Map<const Eigen::MatrixXd> Y(panel.values.data(), g, nc);

  SmoothedPanel out;
  out.n = panel.n;
  out.p = panel.p;
  out.basis = spec;
  out.grid = panel.grid;
  out.coefs.assign(static_cast<size_t>(nc) * L, 0.0);
  Eigen::Map<Eigen::MatrixXd> C(out.coefs.data(), L, nc);
  C = qr.solve(Y);
  return out;
}

std::vector<double> cv_loss_table_L(const CurvePanel& panel, const std::vector<int>& candidates,
                                    int folds, BasisKind family, int degree) {
  if (candidates.empty()) throw InvalidArgument("select_L_cv: empty candidate list");
  if (folds < 2) throw InvalidArgument("select_L_cv: folds must be >= 2");
  const int g = panel.grid_size();
  for (int L : candidates) {
    if (static_cast<double>(L) > static_cast<double>(g) * (1.0 - 1.0 / folds) + 1e-9)
      throw InvalidArgument("select_L_cv: candidate L = " + std::to_string(L) +
                            " exceeds |grid| * (1 - 1/folds)");
  }

  const long nc = static_cast<long>(panel.n) * panel.p;
  Eigen::Map<const Eigen::MatrixXd> Y(panel.values.data(), g, nc);

  std::vector<double> losses;
  losses.reserve(candidates.size());
  for (int L : candidates) {
    BasisSpec spec;
    spec.kind = family;
    spec.dim = L;
    spec.degree = degree;
    spec.validate();
    const Eigen::MatrixXd B = to_eigen(eval_basis(spec, panel.grid));

    double err = 0.0;
    long count = 0;
    for (int f = 0; f < folds; ++f) {
      std::vector<int> test_rows, train_rows;
      for (int k = 0; k < g; ++k) (k % folds == f ? test_rows : train_rows).push_back(k);
      if (static_cast<int>(train_rows.size()) < L)
        throw InvalidArgument("select_L_cv: training fold smaller than L");

      Eigen::MatrixXd Btr(train_rows.size(), L), Bte(test_rows.size(), L);
      Eigen::MatrixXd Ytr(train_rows.size(), nc), Yte(test_rows.size(), nc);
      for (size_t r = 0; r < train_rows.size(); ++r) {
        Btr.row(r) = B.row(train_rows[r]);
        Ytr.row(r) = Y.row(train_rows[r]);
      }
      for (size_t r = 0; r < test_rows.size(); ++r) {
        Bte.row(r) = B.row(test_rows[r]);
        Yte.row(r) = Y.row(test_rows[r]);
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Btr);
      if (qr.rank() < L)
        throw RankError("select_L_cv: rank-deficient training design for basis " + spec.name());
      const Eigen::MatrixXd resid = Yte - Bte * qr.solve(Ytr);
      err += resid.squaredNorm();
      count += static_cast<long>(test_rows.size()) * nc;
    }
    losses.push_back(err / static_cast<double>(count));
  }
  return losses;
}

int select_L_cv(const CurvePanel& panel, const std::vector<int>& candidates, int folds,
                BasisKind family, int degree, double tie_fraction) {
  const auto losses = cv_loss_table_L(panel, candidates, folds, family, degree);
  return select_from_cv_table(candidates, losses, tie_fraction);
}

}  // namespace fudge
