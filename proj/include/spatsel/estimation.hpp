#pragma once

#include <vector>

#include "spatsel/linalg.hpp"

namespace spatsel {

// Paired observations on the d-dimensional grid {1,...,n}^d, sites in
// lexicographic order. Rows of x/y are sites.
struct SpatialSample {
  int grid_side = 0;   // n
  int grid_dim = 2;    // d
  Matrix x;            // n^d x p
  Matrix y;            // n^d x q

  int n_sites() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }
  int q() const { return static_cast<int>(y.cols()); }

  // Throws on shape/finite violations (n^d rows, p >= 2, q >= 1).
  void validate() const;
};

// Empirical covariance operators and the means they were centered on.
struct CovariancePair {
  Matrix v1;        // p x p
  Matrix v12;       // p x q
  Vector mean_x;    // p
  Vector mean_y;    // q
  long n_sites = 0;
};

// Site-averaged means and the biased (divisor n^d) covariance and
// cross-covariance: v1 = (1/N) sum (x-xbar)(x-xbar)^T,
// v12 = (1/N) sum (x-xbar)(y-ybar)^T.
CovariancePair empirical_cov_pair(const SpatialSample& sample);

// Same estimator restricted to the sites listed in `rows` (0-based
// row indices into the sample); used by cross-validation folds.
CovariancePair empirical_cov_pair_rows(const SpatialSample& sample,
                                       const std::vector<int>& rows);

// xi_K = || v12 - v1 Pi_K v12 ||_H. Works identically for plug-in and
// population inputs. K empty gives ||v12||_H.
double criterion_xi(const IndexSet& k, const Matrix& v1, const Matrix& v12);

// Component i is criterion_xi(I \ {i}, v1, v12). SingularSubmatrix is
// rethrown with the offending index attached.
std::vector<double> leave_one_out_criteria(const CovariancePair& cov);

}  // namespace spatsel
