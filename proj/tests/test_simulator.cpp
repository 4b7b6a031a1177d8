#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "spatsel/simulator.hpp"

using namespace spatsel;

TEST_CASE("spatial weights reduce to 1 in the independent limit") {
  for (double w : spatial_weight_grid(6, kIndependentRange))
    CHECK(w == doctest::Approx(1.0));
  CHECK(spatial_weight(3, 4, 6, kIndependentRange) == doctest::Approx(1.0));
}

TEST_CASE("spatial weight matches the definition") {
  const int n = 5;
  const double a = 3.0;
  double acc = 0.0;
  for (int m = 1; m <= n; ++m)
    for (int l = 1; l <= n; ++l)
      acc += std::exp(-std::sqrt(double((2 - m) * (2 - m) + (4 - l) * (4 - l))) / a);
  acc /= double(n * n);
  CHECK(spatial_weight(2, 4, n, a) == doctest::Approx(acc));

  std::vector<double> grid = spatial_weight_grid(n, a);
  // lexicographic order: site (2,4) sits at (2-1)*n + (4-1)
  CHECK(grid[(2 - 1) * n + (4 - 1)] == doctest::Approx(acc));
  // weights lie in (0, 1], larger a means weaker damping
  std::vector<double> wide = spatial_weight_grid(n, 25.0);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid[i] > 0.0);
    CHECK(grid[i] <= 1.0);
    CHECK(wide[i] >= grid[i]);
  }
}

TEST_CASE("dataset generation is deterministic in the seed") {
  SimulationConfig cfg = SimulationConfig::standard(8, 25.0, 1.0, 123);
  SpatialSample s1 = generate_dataset(cfg);
  SpatialSample s2 = generate_dataset(cfg);
  CHECK((s1.x - s2.x).norm() == 0.0);
  CHECK((s1.y - s2.y).norm() == 0.0);

  cfg.seed = 124;
  SpatialSample s3 = generate_dataset(cfg);
  CHECK((s1.x - s3.x).norm() > 0.0);
}

TEST_CASE("precomputed-table variant matches the plain generator") {
  SimulationConfig cfg = SimulationConfig::standard(8, 10.0, 2.0, 77);
  SpatialSample plain = generate_dataset(cfg);
  Rng rng(cfg.seed);
  std::vector<double> weights = spatial_weight_grid(cfg.n, cfg.a);
  ErrorFieldFactor factor(cfg.n);
  SpatialSample tabled = generate_dataset(cfg, rng, weights, factor);
  CHECK((plain.x - tabled.x).norm() == 0.0);
  CHECK((plain.y - tabled.y).norm() == 0.0);
}

TEST_CASE("standard config shapes and noiseless response") {
  SimulationConfig cfg = SimulationConfig::standard(6, 25.0, 0.0, 5);
  SpatialSample s = generate_dataset(cfg);
  CHECK(s.p() == 6);
  CHECK(s.q() == 1);
  CHECK(s.n_sites() == 36);
  // kappa2 = 0: y = 3 x1 + 5 x2 + 4 x3 + 6 x4 exactly
  Vector expected = 3 * s.x.col(0) + 5 * s.x.col(1) + 4 * s.x.col(2) +
                    6 * s.x.col(3);
  CHECK((s.y.col(0) - expected).norm() <= 1e-12);
}

TEST_CASE("covariate covariance approaches the cosine-series target") {
  // a = inf, so the population covariance between coordinates k and l
  // is exp(-(1.5 (k-l))^2 / 8) at every site. Average the empirical
  // site covariance over replications.
  const int n = 8, reps = 300;
  Matrix target = oracles::population_v1(6);
  Matrix acc = Matrix::Zero(6, 6);
  std::vector<double> weights = spatial_weight_grid(n, kIndependentRange);
  for (int r = 0; r < reps; ++r) {
    SimulationConfig cfg = SimulationConfig::standard(
        n, kIndependentRange, 0.0, derive_seed(31, {uint64_t(r)}));
    Rng rng(cfg.seed);
    Matrix x = generate_covariates(cfg, rng, weights);
    // uncentered site moment: the field has mean zero, so this is an
    // unbiased estimate of the coordinate covariance (site-centering
    // would subtract the sizable variance of the site mean at n = 8)
    acc += x.transpose() * x / double(x.rows());
  }
  acc /= double(reps);
  CHECK((acc - target).cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("error field reproduces the Gaussian covariogram") {
  const int n = 10, reps = 400;
  const double kappa2 = 2.0;
  ErrorFieldFactor factor(n);
  Rng rng(99);
  double lag0 = 0.0, lag1 = 0.0;
  long n0 = 0, n1 = 0;
  for (int r = 0; r < reps; ++r) {
    Vector e = factor.draw(kappa2, rng);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        double v = e[(i - 1) * n + (j - 1)];
        lag0 += v * v;
        ++n0;
        if (j < n) {
          lag1 += v * e[(i - 1) * n + j];
          ++n1;
        }
      }
  }
  lag0 /= double(n0);
  lag1 /= double(n1);
  CHECK(lag0 == doctest::Approx(kappa2).epsilon(0.05));
  CHECK(lag1 == doctest::Approx(kappa2 * std::exp(-1.0 / 9.0)).epsilon(0.05));
}

TEST_CASE("zero noise variance gives a zero error field") {
  SimulationConfig cfg = SimulationConfig::standard(5, 25.0, 0.0, 1);
  Rng rng(1);
  Vector e = generate_errors(cfg, rng);
  CHECK(e.norm() == 0.0);
}

TEST_CASE("oversized grids are rejected") {
  CHECK_THROWS_AS(ErrorFieldFactor(65), GridTooLarge);
  CHECK_NOTHROW(ErrorFieldFactor(8));
}

TEST_CASE("derive_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t cell = 0; cell < 8; ++cell)
    for (std::uint64_t rep = 0; rep < 64; ++rep)
      for (std::uint64_t purpose = 0; purpose < 2; ++purpose)
        seen.insert(derive_seed(42, {cell, rep, purpose}));
  CHECK(seen.size() == 8u * 64u * 2u);
  // different masters decouple too
  CHECK(derive_seed(1, {0, 0, 0}) != derive_seed(2, {0, 0, 0}));
  // label order matters
  CHECK(derive_seed(42, {1, 2}) != derive_seed(42, {2, 1}));
}

TEST_CASE("config validation") {
  SimulationConfig cfg = SimulationConfig::standard(6, 25.0, 1.0, 0);
  CHECK_NOTHROW(cfg.validate());
  cfg.a = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = SimulationConfig::standard(6, 25.0, -1.0, 0);
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = SimulationConfig::standard(0, 25.0, 1.0, 0);
  CHECK_THROWS_AS(cfg.validate(), Error);
}
