#include "spatsel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spatsel {

IndexSet::IndexSet(std::vector<int> members, int ambient)
    : members_(std::move(members)), ambient_(ambient) {
  if (ambient_ < 1) throw Error("IndexSet: ambient must be positive");
  int prev = 0;
  for (int m : members_) {
    if (m <= prev) throw Error("IndexSet: members must be strictly increasing");
    if (m > ambient_) throw Error("IndexSet: member exceeds ambient dimension");
    prev = m;
  }
}

IndexSet IndexSet::empty(int ambient) { return IndexSet({}, ambient); }

IndexSet IndexSet::full(int ambient) {
  std::vector<int> m(ambient);
  for (int i = 0; i < ambient; ++i) m[i] = i + 1;
  return IndexSet(std::move(m), ambient);
}

IndexSet IndexSet::complement_of(int index, int ambient) {
  std::vector<int> m;
  m.reserve(ambient - 1);
  for (int i = 1; i <= ambient; ++i)
    if (i != index) m.push_back(i);
  return IndexSet(std::move(m), ambient);
}

bool IndexSet::contains(int index) const {
  return std::binary_search(members_.begin(), members_.end(), index);
}

std::string IndexSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i) out << ',';
    out << members_[i];
  }
  out << '}';
  return out.str();
}

namespace detail {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

Matrix solve_restricted(const IndexSet& k, const Matrix& v1,
                        const Matrix& rhs) {
  const int r = k.size();
  Matrix sub(r, r);
  Matrix rhs_k(r, rhs.cols());
  for (int a = 0; a < r; ++a) {
    const int ia = k.members()[a] - 1;
    rhs_k.row(a) = rhs.row(ia);
    for (int b = 0; b < r; ++b) sub(a, b) = v1(ia, k.members()[b] - 1);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
  const Vector& ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  const double emin = ev.cwiseAbs().minCoeff();
  if (!(emax > 0.0) || emin / emax < 1e-12)
    throw SingularSubmatrix("singular " + k.to_string() +
                            " block: rcond below 1e-12");
  return es.eigenvectors() *
         ev.cwiseInverse().asDiagonal() *
         (es.eigenvectors().transpose() * rhs_k);
}

}  // namespace detail

Matrix outer_product(const Vector& u, const Vector& v) {
  detail::require_finite(u, "outer_product u");
  detail::require_finite(v, "outer_product v");
  return v * u.transpose();
}

double hs_norm(const Matrix& m) {
  detail::require_finite(m, "hs_norm");
  return m.norm();
}

Matrix restricted_projector(const IndexSet& k, const Matrix& v1) {
  detail::require_finite(v1, "restricted_projector V1");
  if (v1.rows() != v1.cols())
    throw Error("restricted_projector: V1 must be square");
  if (k.is_empty()) throw Error("restricted_projector: empty index set");
  const int p = static_cast<int>(v1.rows());
  if (k.ambient() != p)
    throw Error("restricted_projector: ambient mismatch with V1");
  // inv = (A_K V1 A_K^T)^{-1}; scatter back to p x p.
  Matrix inv = detail::solve_restricted(k, v1, Matrix::Identity(p, p));
  Matrix pi = Matrix::Zero(p, p);
  for (int a = 0; a < k.size(); ++a)
    for (int j = 0; j < p; ++j) pi(k.members()[a] - 1, j) = inv(a, j);
  return pi;
}

}  // namespace spatsel
