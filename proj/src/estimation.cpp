#include "spatsel/estimation.hpp"

#include <cmath>

namespace spatsel {

void SpatialSample::validate() const {
  if (grid_side < 1 || grid_dim < 1)
    throw Error("SpatialSample: grid_side and grid_dim must be >= 1");
  double expected = std::pow(static_cast<double>(grid_side), grid_dim);
  if (static_cast<double>(x.rows()) != expected)
    throw Error("SpatialSample: row count does not equal n^d");
  if (x.rows() != y.rows())
    throw Error("SpatialSample: x and y site counts differ");
  if (x.cols() < 2) throw Error("SpatialSample: p must be >= 2");
  if (y.cols() < 1) throw Error("SpatialSample: q must be >= 1");
  detail::require_finite(x, "SpatialSample x");
  detail::require_finite(y, "SpatialSample y");
}

static CovariancePair cov_from_blocks(const Matrix& x, const Matrix& y) {
  const long n = x.rows();
  CovariancePair out;
  out.n_sites = n;
  out.mean_x = x.colwise().mean();
  out.mean_y = y.colwise().mean();
  Matrix xc = x.rowwise() - out.mean_x.transpose();
  Matrix yc = y.rowwise() - out.mean_y.transpose();
  out.v1 = (xc.transpose() * xc) / static_cast<double>(n);
  // Symmetrize away last-bit asymmetry from the matrix product.
  out.v1 = 0.5 * (out.v1 + out.v1.transpose()).eval();
  out.v12 = (xc.transpose() * yc) / static_cast<double>(n);
  return out;
}

CovariancePair empirical_cov_pair(const SpatialSample& sample) {
  sample.validate();
  if (sample.n_sites() < 2)
    throw DegenerateSample("empirical_cov_pair: fewer than 2 sites");
  return cov_from_blocks(sample.x, sample.y);
}

CovariancePair empirical_cov_pair_rows(const SpatialSample& sample,
                                       const std::vector<int>& rows) {
  if (rows.size() < 2)
    throw DegenerateSample("empirical_cov_pair_rows: fewer than 2 sites");
  Matrix x(rows.size(), sample.x.cols());
  Matrix y(rows.size(), sample.y.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    x.row(i) = sample.x.row(rows[i]);
    y.row(i) = sample.y.row(rows[i]);
  }
  return cov_from_blocks(x, y);
}

double criterion_xi(const IndexSet& k, const Matrix& v1, const Matrix& v12) {
  detail::require_finite(v1, "criterion_xi v1");
  detail::require_finite(v12, "criterion_xi v12");
  if (k.is_empty()) return hs_norm(v12);
  // v1 Pi_K v12 = v1[:,K] (v1[K,K])^{-1} v12[K,:]
  Matrix sol = detail::solve_restricted(k, v1, v12);
  Matrix fitted = Matrix::Zero(v12.rows(), v12.cols());
  for (int a = 0; a < k.size(); ++a)
    fitted += v1.col(k.members()[a] - 1) * sol.row(a);
  return hs_norm(v12 - fitted);
}

std::vector<double> leave_one_out_criteria(const CovariancePair& cov) {
  const int p = static_cast<int>(cov.v1.rows());
  if (p < 2) throw Error("leave_one_out_criteria: p must be >= 2");
  std::vector<double> out(p);
  for (int i = 1; i <= p; ++i) {
    try {
      out[i - 1] = criterion_xi(IndexSet::complement_of(i, p), cov.v1, cov.v12);
    } catch (const SingularSubmatrix& e) {
      throw SingularSubmatrix(std::string(e.what()) +
                                  " (leaving out variable " +
                                  std::to_string(i) + ")",
                              i);
    }
  }
  return out;
}

}  // namespace spatsel
