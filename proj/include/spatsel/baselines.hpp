#pragma once

#include <vector>

#include "spatsel/estimation.hpp"

namespace spatsel {

enum class PenaltyKind { lasso, scad, hard };

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::lasso;
  double lambda = 0.0;
  double scad_a = 3.7;
};

// Penalized least squares path for a univariate response: minimizes
// (1/2N) sum (y - b'x)^2 + sum_j p_lambda(|b_j|) for each lambda in
// the given order, warm-starting along the grid. Data are centered
// internally; coefficients refer to the original x scale. LASSO runs
// cyclic coordinate descent to 1e-8 coefficient tolerance; SCAD and
// hard thresholding use local linear approximation started from the
// LASSO solution at the same lambda (at most 20 outer iterations).
std::vector<Vector> penalized_ls_path(const SpatialSample& sample,
                                      PenaltyKind kind,
                                      const std::vector<double>& lambda_grid,
                                      double scad_a = 3.7);

// Picks lambda on a 50-point descending log grid from the KKT bound
// max_j |cov(x_j, y)| down to 1e-4 of it, by
// BIC = N log(RSS/N) + df log(N), df = nonzero count. Returns the
// support of the chosen solution.
IndexSet baseline_select(const SpatialSample& sample, PenaltyKind kind,
                         double scad_a = 3.7);

}  // namespace spatsel
