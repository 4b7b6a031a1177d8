#include "spatsel/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace spatsel {

namespace {

constexpr double kCoefTol = 1e-8;
constexpr int kMaxSweeps = 100000;
constexpr int kLlaOuter = 20;

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Cyclic coordinate descent for the weighted L1 problem
// (1/2N)||yc - xc b||^2 + sum_j w_j |b_j|. check_descent enables the
// per-sweep objective monotonicity assertion (valid for plain LASSO
// where the weights are the true penalty).
void weighted_lasso_cd(const Matrix& xc, const Vector& yc,
                       const Vector& col_sq, const Vector& weights,
                       Vector& b, bool check_descent) {
  const long n = xc.rows();
  const int p = static_cast<int>(xc.cols());
  Vector r = yc - xc * b;
  auto objective = [&]() {
    return r.squaredNorm() / (2.0 * n) + weights.dot(b.cwiseAbs());
  };
  double prev_obj = check_descent ? objective() : 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_delta = 0.0;
    for (int j = 0; j < p; ++j) {
      if (col_sq[j] <= 0.0) continue;  // constant column stays at 0
      const double old = b[j];
      const double z = xc.col(j).dot(r) / n + col_sq[j] * old;
      const double updated = soft_threshold(z, weights[j]) / col_sq[j];
      if (updated != old) {
        r -= (updated - old) * xc.col(j);
        b[j] = updated;
        max_delta = std::max(max_delta, std::abs(updated - old));
      }
    }
    if (check_descent) {
      const double obj = objective();
      if (obj > prev_obj + 1e-10 * (1.0 + std::abs(prev_obj)))
        throw Error("lasso: objective increased across a sweep");
      prev_obj = obj;
    }
    if (max_delta < kCoefTol) break;
  }
}

double penalty_derivative(PenaltyKind kind, double lambda, double scad_a,
                          double t) {
  switch (kind) {
    case PenaltyKind::lasso:
      return lambda;
    case PenaltyKind::scad:
      if (t <= lambda) return lambda;
      return std::max(scad_a * lambda - t, 0.0) / (scad_a - 1.0);
    case PenaltyKind::hard:
      return 2.0 * std::max(lambda - t, 0.0);
  }
  return lambda;
}

}  // namespace

std::vector<Vector> penalized_ls_path(const SpatialSample& sample,
                                      PenaltyKind kind,
                                      const std::vector<double>& lambda_grid,
                                      double scad_a) {
  sample.validate();
  if (sample.q() != 1)
    throw NotUnivariateResponse("penalized_ls_path: q must be 1");
  if (!(scad_a > 2.0)) throw ConfigError("penalized_ls_path: scad_a must be > 2");
  const long n = sample.n_sites();
  const int p = sample.p();

  Matrix xc = sample.x.rowwise() - sample.x.colwise().mean();
  Vector yc = sample.y.col(0).array() - sample.y.col(0).mean();
  Vector col_sq(p);
  for (int j = 0; j < p; ++j) col_sq[j] = xc.col(j).squaredNorm() / n;

  std::vector<Vector> path;
  path.reserve(lambda_grid.size());
  Vector warm = Vector::Zero(p);
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0))
      throw ConfigError("penalized_ls_path: lambda must be >= 0");
    Vector b = warm;
    weighted_lasso_cd(xc, yc, col_sq, Vector::Constant(p, lambda), b,
                      /*check_descent=*/true);
    if (kind != PenaltyKind::lasso) {
      for (int outer = 0; outer < kLlaOuter; ++outer) {
        Vector w(p);
        for (int j = 0; j < p; ++j)
          w[j] = penalty_derivative(kind, lambda, scad_a, std::abs(b[j]));
        Vector prev = b;
        weighted_lasso_cd(xc, yc, col_sq, w, b, /*check_descent=*/false);
        if ((b - prev).cwiseAbs().maxCoeff() < kCoefTol) break;
      }
    }
    warm = b;
    path.push_back(std::move(b));
  }
  return path;
}

IndexSet baseline_select(const SpatialSample& sample, PenaltyKind kind,
                         double scad_a) {
  sample.validate();
  if (sample.q() != 1)
    throw NotUnivariateResponse("baseline_select: q must be 1");
  const long n = sample.n_sites();
  const int p = sample.p();

  Matrix xc = sample.x.rowwise() - sample.x.colwise().mean();
  Vector yc = sample.y.col(0).array() - sample.y.col(0).mean();
  double lambda_max = 0.0;
  for (int j = 0; j < p; ++j)
    lambda_max = std::max(lambda_max, std::abs(xc.col(j).dot(yc)) / n);
  if (lambda_max <= 0.0) return IndexSet::empty(p);

  constexpr int kGridSize = 50;
  std::vector<double> grid(kGridSize);
  const double ratio = 1e-4;
  for (int i = 0; i < kGridSize; ++i)
    grid[i] = lambda_max *
              std::pow(ratio, static_cast<double>(i) / (kGridSize - 1));

  std::vector<Vector> path = penalized_ls_path(sample, kind, grid, scad_a);

  double best_bic = 0.0;
  int best = -1;
  for (int i = 0; i < kGridSize; ++i) {
    const Vector& b = path[i];
    const double rss = (yc - xc * b).squaredNorm();
    int df = 0;
    for (int j = 0; j < p; ++j)
      if (b[j] != 0.0) ++df;
    const double bic =
        n * std::log(std::max(rss, 1e-30) / n) + df * std::log(double(n));
    if (best < 0 || bic < best_bic) {
      best_bic = bic;
      best = i;
    }
  }
  std::vector<int> support;
  for (int j = 0; j < p; ++j)
    if (path[best][j] != 0.0) support.push_back(j + 1);
  return IndexSet(std::move(support), p);
}

}  // namespace spatsel
