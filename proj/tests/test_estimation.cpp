#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spatsel/estimation.hpp"
#include "spatsel/simulator.hpp"

using namespace spatsel;

namespace {

SpatialSample random_sample(int n, int p, int q, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpatialSample s;
  s.grid_side = n;
  s.grid_dim = 2;
  s.x = Matrix(n * n, p);
  s.y = Matrix(n * n, q);
  for (int i = 0; i < n * n; ++i) {
    for (int j = 0; j < p; ++j) s.x(i, j) = gauss(rng);
    for (int j = 0; j < q; ++j) s.y(i, j) = gauss(rng);
  }
  return s;
}

}  // namespace

TEST_CASE("SpatialSample validation") {
  std::mt19937_64 rng(1);
  SpatialSample s = random_sample(3, 3, 1, rng);
  CHECK_NOTHROW(s.validate());

  SpatialSample bad = s;
  bad.grid_side = 4;  // 16 != 9 rows
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = s;
  bad.x(2, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = s;
  bad.x = s.x.leftCols(1);  // p must be >= 2
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("empirical covariance matches the loop oracle") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    SpatialSample s = random_sample(3 + int(rng() % 3), 2 + int(rng() % 4),
                                    1 + int(rng() % 3), rng);
    CovariancePair got = empirical_cov_pair(s);
    CovariancePair ref = oracles::naive_cov_pair(s.x, s.y);
    CHECK((got.v1 - ref.v1).norm() <= 1e-12 * (1.0 + ref.v1.norm()));
    CHECK((got.v12 - ref.v12).norm() <= 1e-12 * (1.0 + ref.v12.norm()));
    CHECK((got.mean_x - ref.mean_x).norm() <= 1e-12);
    CHECK((got.mean_y - ref.mean_y).norm() <= 1e-12);
    CHECK(got.n_sites == s.n_sites());
    // exact symmetry of v1
    CHECK((got.v1 - got.v1.transpose()).norm() == 0.0);
  }
}

TEST_CASE("row-restricted covariance agrees with a subsampled oracle") {
  std::mt19937_64 rng(3);
  SpatialSample s = random_sample(4, 4, 2, rng);
  std::vector<int> rows = {0, 3, 4, 7, 9, 11, 15};
  CovariancePair got = empirical_cov_pair_rows(s, rows);
  Matrix xs(rows.size(), s.p()), ys(rows.size(), s.q());
  for (size_t i = 0; i < rows.size(); ++i) {
    xs.row(i) = s.x.row(rows[i]);
    ys.row(i) = s.y.row(rows[i]);
  }
  CovariancePair ref = oracles::naive_cov_pair(xs, ys);
  CHECK((got.v1 - ref.v1).norm() <= 1e-12);
  CHECK((got.v12 - ref.v12).norm() <= 1e-12);
  CHECK(got.n_sites == long(rows.size()));
}

TEST_CASE("criterion_xi equals the naive construction") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    int p = 2 + int(rng() % 5);
    int q = 1 + int(rng() % 3);
    Matrix v1 = oracles::random_spd(p, rng);
    Matrix v12(p, q);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) v12(i, j) = gauss(rng);
    IndexSet k = oracles::random_subset(p, rng);
    double got = criterion_xi(k, v1, v12);
    double ref = oracles::naive_xi(k, v1, v12);
    CHECK(got == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("empty K gives the norm of v12") {
  Matrix v1 = Matrix::Identity(3, 3);
  Matrix v12(3, 1);
  v12 << 3, 0, 4;
  CHECK(criterion_xi(IndexSet::empty(3), v1, v12) == doctest::Approx(5.0));
}

TEST_CASE("population criterion vanishes exactly on supersets of I1") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int p = 3 + int(rng() % 4);
    int q = 1 + int(rng() % 3);
    Matrix v1 = oracles::random_spd(p, rng);
    IndexSet i1 = oracles::random_subset(p, rng);
    if (i1.is_empty()) i1 = IndexSet({1 + int(rng() % p)}, p);
    Matrix b = oracles::random_coefficients(p, q, i1, rng);
    Matrix v12 = v1 * b.transpose();
    IndexSet k = oracles::random_subset(p, rng);
    bool superset = true;
    for (int j : i1.members()) superset = superset && k.contains(j);
    double xi = criterion_xi(k, v1, v12);
    if (superset)
      CHECK(xi <= 1e-10);
    else
      CHECK(xi >= 1e-6);
  }
}

TEST_CASE("residual prediction loss is monotone under set inclusion") {
  // The restricted projector is the orthogonal projection in the
  // V1^{-1} geometry, so the V1^{-1}-weighted residual norm (the excess
  // prediction loss of keeping only K) decreases as K grows. The plain
  // HS norm of the residual does not share this guarantee.
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    int p = 3 + int(rng() % 4);
    Matrix v1 = oracles::random_spd(p, rng);
    Matrix v12(p, 2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < 2; ++j) v12(i, j) = gauss(rng);
    IndexSet small = oracles::random_subset(p, rng);
    // grow small by a few extra members
    std::vector<int> grown = small.members();
    for (int j = 1; j <= p; ++j)
      if (!small.contains(j) && (rng() % 2)) grown.push_back(j);
    std::sort(grown.begin(), grown.end());
    IndexSet big(grown, p);
    Matrix v1_inv = v1.inverse();
    auto loss = [&](const IndexSet& k) {
      Matrix r = k.is_empty()
                     ? v12
                     : Matrix(v12 - v1 * restricted_projector(k, v1) * v12);
      return (r.transpose() * v1_inv * r).trace();
    };
    CHECK(loss(big) <= loss(small) + 1e-10);
  }
}

TEST_CASE("leave-one-out criteria match per-index evaluation") {
  std::mt19937_64 rng(7);
  SpatialSample s = random_sample(4, 5, 2, rng);
  CovariancePair cov = empirical_cov_pair(s);
  std::vector<double> loo = leave_one_out_criteria(cov);
  REQUIRE(loo.size() == 5);
  for (int i = 1; i <= 5; ++i) {
    double ref = criterion_xi(IndexSet::complement_of(i, 5), cov.v1, cov.v12);
    CHECK(loo[i - 1] == doctest::Approx(ref));
  }
}

TEST_CASE("covariance estimator converges at the parametric-in-N rate") {
  // Simulated covariates at a = 25; the site-averaged population target
  // is mean(D^2) * exp(-(1.5 (k-l))^2 / 8). Mean squared HS error over
  // 200 replications should decay fast in n; the fitted log-log slope
  // across n in {8, 16, 32} must be at most -1.6.
  const std::vector<int> ns = {8, 16, 32};
  const int reps = 200;
  std::vector<double> log_mse, log_n;
  for (int n : ns) {
    std::vector<double> weights = spatial_weight_grid(n, 25.0);
    double mean_d2 = 0.0;
    for (double w : weights) mean_d2 += w * w;
    mean_d2 /= double(weights.size());
    Matrix target = mean_d2 * oracles::population_v1(6);

    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
      SimulationConfig cfg = SimulationConfig::standard(
          n, 25.0, 0.0, derive_seed(977, {uint64_t(n), uint64_t(r)}));
      Rng rng(cfg.seed);
      Matrix x = generate_covariates(cfg, rng, weights);
      SpatialSample s;
      s.grid_side = n;
      s.x = x;
      s.y = Matrix::Zero(x.rows(), 1);
      CovariancePair cov = empirical_cov_pair(s);
      double err = hs_norm(cov.v1 - target);
      acc += err * err;
    }
    log_mse.push_back(std::log(acc / reps));
    log_n.push_back(std::log(double(n)));
  }
  // least-squares slope
  double mx = 0, my = 0;
  for (size_t i = 0; i < log_n.size(); ++i) {
    mx += log_n[i];
    my += log_mse[i];
  }
  mx /= log_n.size();
  my /= log_n.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < log_n.size(); ++i) {
    num += (log_n[i] - mx) * (log_mse[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  double slope = num / den;
  INFO("slope = " << slope);
  CHECK(slope <= -1.6);
}
