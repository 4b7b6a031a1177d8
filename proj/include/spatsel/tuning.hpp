#pragma once

#include <vector>

#include "spatsel/selection.hpp"

namespace spatsel {

// Ordinary least squares of y on the selected coordinates of x, with
// an intercept. Returns (r+1) x q coefficients, intercept row first.
Matrix fit_restricted_ols(const Matrix& x, const Matrix& y,
                          const IndexSet& selected);

// Predictions of the fit above at new x rows.
Matrix predict_restricted_ols(const Matrix& coef, const Matrix& x,
                              const IndexSet& selected);

// Search domain for the penalty exponents. folds == 0 picks
// leave-one-out when n^d <= 256 and 10-fold otherwise; folds == n^d
// is leave-one-out.
struct TuningGrid {
  std::vector<double> gamma_values;
  std::vector<double> beta_values;
  int folds = 0;

  // {0.05, 0.15, 0.25, 0.35, 0.45}^2.
  static TuningGrid defaults();
  void validate() const;
};

struct CvScore {
  double value = 0.0;   // average held-out squared prediction error
  int failed_folds = 0;
  int total_folds = 0;
};

// For each held-out fold: select variables on the retained sites with
// (gamma, beta), fit restricted OLS there, and score the held-out
// predictions. Folds where selection hits a singular block are skipped
// and counted. Throws FoldTooSmall if a training fold has < p+1 sites
// and AllFoldsFailed if nothing could be evaluated.
CvScore cv_score(const SpatialSample& sample, double gamma, double beta,
                 int folds);

struct CvTableRow {
  double gamma = 0.0;
  double beta = 0.0;
  double cv = 0.0;
  int failed_folds = 0;
};

struct TuningResult {
  double gamma_opt = 0.0;
  double beta_opt = 0.0;
  std::vector<CvTableRow> table;  // row-major in (gamma, beta)
};

// Evaluates cv_score on every grid point; ties broken by the first
// point in row-major order.
TuningResult optimize_tuning(const SpatialSample& sample,
                             const TuningGrid& grid);

}  // namespace spatsel
