#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spatsel/errors.hpp"

namespace spatsel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Subset of {1,...,p}, stored strictly increasing. Indices are 1-based
// throughout the public API.
class IndexSet {
 public:
  // Validates: members strictly increasing, within {1,...,ambient}.
  IndexSet(std::vector<int> members, int ambient);

  // The empty subset of {1,...,ambient}.
  static IndexSet empty(int ambient);
  // The full set {1,...,ambient}.
  static IndexSet full(int ambient);
  // {1,...,ambient} minus one index.
  static IndexSet complement_of(int index, int ambient);

  const std::vector<int>& members() const { return members_; }
  int ambient() const { return ambient_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool is_empty() const { return members_.empty(); }
  bool contains(int index) const;
  bool operator==(const IndexSet& other) const {
    return ambient_ == other.ambient_ && members_ == other.members_;
  }

  std::string to_string() const;  // e.g. "{1,2,4}"

 private:
  std::vector<int> members_;
  int ambient_;
};

// Tensor product (u (x) v): the map h -> <u,h> v, represented as the
// r x m matrix v u^T for u in R^m, v in R^r.
Matrix outer_product(const Vector& u, const Vector& v);

// Hilbert-Schmidt norm sqrt(tr(M M^T)), i.e. the Frobenius norm.
double hs_norm(const Matrix& m);

// Restricted projector A_K^T (A_K V1 A_K^T)^{-1} A_K for a symmetric
// p x p matrix V1. Throws SingularSubmatrix when the K x K block has
// reciprocal condition estimate below 1e-12.
Matrix restricted_projector(const IndexSet& k, const Matrix& v1);

namespace detail {

// Solves (V1[K,K]) Z = rhs[K,:] for the K-rows of rhs via a symmetric
// eigendecomposition of the K x K block, with the same singularity
// guard as restricted_projector. Returns the r x c solution.
Matrix solve_restricted(const IndexSet& k, const Matrix& v1,
                        const Matrix& rhs);

void require_finite(const Matrix& m, const char* what);

}  // namespace detail

}  // namespace spatsel
