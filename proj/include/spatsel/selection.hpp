#pragma once

#include <functional>
#include <vector>

#include "spatsel/estimation.hpp"

namespace spatsel {

// Which argument the dimension penalty g receives: the position i in
// the sorted order (default), or the permuted index tau(i) as printed
// in the dimension estimator's definition. The permuted-index form can
// return the wrong dimension even on exact population inputs (see
// estimate_dimension), so position is the default.
enum class DimPenaltyArg { position, permuted_index };

// Penalty functions and exponents for the two penalized estimators.
// f must be strictly decreasing and positive on {1,...,p}, g strictly
// increasing and positive; both are checked by evaluation.
struct PenaltyConfig {
  std::function<double(int)> f;
  std::function<double(int)> g;
  double gamma = 0.25;  // in (0, 1/2)
  double beta = 0.25;   // in (0, 1/2)
  DimPenaltyArg dim_penalty_arg = DimPenaltyArg::position;

  // f(x) = ln(x+1)^-0.1, g(x) = ln(x+1)^0.1. The +1 shift keeps f(1)
  // finite while preserving strict monotonicity and positivity.
  static PenaltyConfig defaults(double gamma = 0.25, double beta = 0.25);
  // f(x) = ln(x)^-0.1, g(x) = ln(x)^0.1; f(1) and g(1) are undefined,
  // so this only validates on index ranges starting at 2.
  static PenaltyConfig literal_log(double gamma = 0.25, double beta = 0.25);

  // Checks the exponent ranges and the monotonicity/positivity of f
  // and g over {first_index,...,p}. Throws ConfigError on violation.
  void validate(int p, int first_index = 1) const;
};

// Full output of the selection procedure. All indices 1-based.
struct SelectionResult {
  std::vector<int> tau;        // permutation of {1,...,p}
  int s_hat = 0;               // estimated dimension, in {1,...,p}
  IndexSet i1_hat;             // {tau(1),...,tau(s_hat)}, sorted
  std::vector<double> xi_minus;  // leave-one-out criteria (HS norms)
  std::vector<double> phi;     // penalized sort values, by variable index
  std::vector<double> psi;     // penalized dimension values, by position
};

// Sorts phi_i = xi_minus[i] + f(i)/n^{d*gamma} in decreasing order.
// Exact float ties are broken by the smaller original index.
std::vector<int> estimate_permutation(const std::vector<double>& xi_minus,
                                      const PenaltyConfig& pen, int n, int d);

// Smallest argmin of psi_i = nested_xi[i] + g(arg)/n^{d*beta}, where
// arg is i or tau(i) depending on pen.dim_penalty_arg. nested_xi[i-1]
// must hold the criterion of {tau(1),...,tau(i)}.
int estimate_dimension(const std::vector<int>& tau,
                       const std::vector<double>& nested_xi,
                       const PenaltyConfig& pen, int n, int d);

// End-to-end: covariances -> leave-one-out criteria -> permutation ->
// nested criteria -> dimension -> selected set.
//
// The penalized estimators operate on the squared criteria. With the
// plain HS norm the sampling plateau of the nested criteria past the
// true dimension shrinks only linearly and swamps the penalty
// increments, which drives the dimension estimate to p on any noisy
// input; squaring keeps the plateau decrements below the penalty
// scale so the argmin lands at the true dimension.
SelectionResult select_variables(const SpatialSample& sample,
                                 const PenaltyConfig& pen);

// Same pipeline starting from precomputed covariances, with the grid
// geometry supplied explicitly (used by cross-validation folds).
SelectionResult select_from_cov(const CovariancePair& cov,
                                const PenaltyConfig& pen, int n, int d);

}  // namespace spatsel
