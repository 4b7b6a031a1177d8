#include "spatsel/tuning.hpp"

#include <cmath>
#include <limits>

namespace spatsel {

Matrix fit_restricted_ols(const Matrix& x, const Matrix& y,
                          const IndexSet& selected) {
  const long n = x.rows();
  const int r = selected.size();
  Matrix design(n, r + 1);
  design.col(0).setOnes();
  for (int a = 0; a < r; ++a)
    design.col(a + 1) = x.col(selected.members()[a] - 1);
  return design.colPivHouseholderQr().solve(y);
}

Matrix predict_restricted_ols(const Matrix& coef, const Matrix& x,
                              const IndexSet& selected) {
  const long n = x.rows();
  const int r = selected.size();
  Matrix design(n, r + 1);
  design.col(0).setOnes();
  for (int a = 0; a < r; ++a)
    design.col(a + 1) = x.col(selected.members()[a] - 1);
  return design * coef;
}

TuningGrid TuningGrid::defaults() {
  return TuningGrid{{0.05, 0.15, 0.25, 0.35, 0.45},
                    {0.05, 0.15, 0.25, 0.35, 0.45},
                    0};
}

void TuningGrid::validate() const {
  if (gamma_values.empty() || beta_values.empty())
    throw ConfigError("TuningGrid: grid must be non-empty");
  for (double g : gamma_values)
    if (!(g > 0.0 && g < 0.5))
      throw ConfigError("TuningGrid: gamma values must lie in (0, 1/2)");
  for (double b : beta_values)
    if (!(b > 0.0 && b < 0.5))
      throw ConfigError("TuningGrid: beta values must lie in (0, 1/2)");
  if (folds < 0) throw ConfigError("TuningGrid: folds must be >= 0");
}

static int resolve_folds(int folds, int n_sites) {
  if (folds == 0) folds = n_sites <= 256 ? n_sites : 10;
  if (folds > n_sites) folds = n_sites;
  return folds;
}

CvScore cv_score(const SpatialSample& sample, double gamma, double beta,
                 int folds) {
  sample.validate();
  const int n_sites = sample.n_sites();
  const int p = sample.p();
  folds = resolve_folds(folds, n_sites);
  if (folds < 2) throw FoldTooSmall("cv_score: need at least 2 folds");

  PenaltyConfig pen = PenaltyConfig::defaults(gamma, beta);
  CvScore score;
  score.total_folds = folds;
  double sse = 0.0;
  long predicted = 0;

  std::vector<int> train;
  std::vector<int> held;
  for (int f = 0; f < folds; ++f) {
    train.clear();
    held.clear();
    for (int s = 0; s < n_sites; ++s)
      (s % folds == f ? held : train).push_back(s);
    if (static_cast<int>(train.size()) < p + 1)
      throw FoldTooSmall("cv_score: training fold smaller than p+1 sites");
    try {
      CovariancePair cov = empirical_cov_pair_rows(sample, train);
      SelectionResult sel =
          select_from_cov(cov, pen, sample.grid_side, sample.grid_dim);
      Matrix xt(train.size(), p), yt(train.size(), sample.q());
      for (size_t i = 0; i < train.size(); ++i) {
        xt.row(i) = sample.x.row(train[i]);
        yt.row(i) = sample.y.row(train[i]);
      }
      Matrix coef = fit_restricted_ols(xt, yt, sel.i1_hat);
      for (int s : held) {
        Matrix pred =
            predict_restricted_ols(coef, sample.x.row(s), sel.i1_hat);
        sse += (sample.y.row(s) - pred.row(0)).squaredNorm();
      }
      predicted += static_cast<long>(held.size());
    } catch (const SingularSubmatrix&) {
      ++score.failed_folds;
    }
  }
  if (predicted == 0)
    throw AllFoldsFailed("cv_score: every fold failed");
  score.value = sse / static_cast<double>(predicted);
  return score;
}

TuningResult optimize_tuning(const SpatialSample& sample,
                             const TuningGrid& grid) {
  grid.validate();
  TuningResult res;
  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  for (double gamma : grid.gamma_values) {
    for (double beta : grid.beta_values) {
      CvTableRow row{gamma, beta, std::numeric_limits<double>::quiet_NaN(), 0};
      try {
        CvScore s = cv_score(sample, gamma, beta, grid.folds);
        row.cv = s.value;
        row.failed_folds = s.failed_folds;
        if (s.value < best) {
          best = s.value;
          res.gamma_opt = gamma;
          res.beta_opt = beta;
          found = true;
        }
      } catch (const AllFoldsFailed&) {
        row.failed_folds = resolve_folds(grid.folds, sample.n_sites());
      }
      res.table.push_back(row);
    }
  }
  if (!found) throw AllFoldsFailed("optimize_tuning: no grid point evaluable");
  return res;
}

}  // namespace spatsel
