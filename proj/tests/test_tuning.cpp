#include <doctest.h>

#include <random>

#include "spatsel/simulator.hpp"
#include "spatsel/tuning.hpp"

using namespace spatsel;

TEST_CASE("restricted OLS recovers an exact linear model") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_rows = 60, p = 5;
  Matrix x(n_rows, p);
  for (int i = 0; i < n_rows; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = gauss(rng);
  // y = 2 + 3 x2 - 1.5 x4, so {2,4} suffices
  Matrix y = (2.0 + (3.0 * x.col(1) - 1.5 * x.col(3)).array()).matrix();

  IndexSet sel({2, 4}, p);
  Matrix coef = fit_restricted_ols(x, y, sel);
  REQUIRE(coef.rows() == 3);  // intercept + 2 slopes
  REQUIRE(coef.cols() == 1);
  CHECK(coef(0, 0) == doctest::Approx(2.0));
  CHECK(coef(1, 0) == doctest::Approx(3.0));
  CHECK(coef(2, 0) == doctest::Approx(-1.5));

  Matrix pred = predict_restricted_ols(coef, x, sel);
  CHECK((pred - y).norm() <= 1e-9);
}

TEST_CASE("tuning grid defaults and validation") {
  TuningGrid grid = TuningGrid::defaults();
  CHECK(grid.gamma_values == std::vector<double>{0.05, 0.15, 0.25, 0.35, 0.45});
  CHECK(grid.beta_values == grid.gamma_values);
  CHECK_NOTHROW(grid.validate());

  grid.gamma_values = {0.5};  // outside (0, 1/2)
  CHECK_THROWS_AS(grid.validate(), Error);
  grid = TuningGrid::defaults();
  grid.beta_values.clear();
  CHECK_THROWS_AS(grid.validate(), Error);
  grid = TuningGrid::defaults();
  grid.folds = -2;
  CHECK_THROWS_AS(grid.validate(), Error);
}

TEST_CASE("cv_score on noiseless data is tiny") {
  SimulationConfig cfg = SimulationConfig::standard(10, 25.0, 0.0, 21);
  SpatialSample s = generate_dataset(cfg);
  CvScore score = cv_score(s, 0.25, 0.25, 10);
  CHECK(score.total_folds == 10);
  CHECK(score.failed_folds == 0);
  CHECK(score.value <= 1e-10);
}

TEST_CASE("cv_score rejects too-small training folds") {
  SimulationConfig cfg = SimulationConfig::standard(3, 25.0, 1.0, 4);
  SpatialSample s = generate_dataset(cfg);
  // 9 sites, 2 folds -> ~4 training sites < p + 1 = 7
  CHECK_THROWS_AS(cv_score(s, 0.25, 0.25, 2), FoldTooSmall);
}

TEST_CASE("optimize_tuning scans the grid row-major and picks the min") {
  SimulationConfig cfg = SimulationConfig::standard(8, 25.0, 1.0, 33);
  SpatialSample s = generate_dataset(cfg);
  TuningGrid grid;
  grid.gamma_values = {0.15, 0.35};
  grid.beta_values = {0.1, 0.2, 0.3};
  grid.folds = 8;
  TuningResult res = optimize_tuning(s, grid);
  REQUIRE(res.table.size() == 6);
  // row-major in (gamma, beta)
  CHECK(res.table[0].gamma == doctest::Approx(0.15));
  CHECK(res.table[0].beta == doctest::Approx(0.1));
  CHECK(res.table[2].beta == doctest::Approx(0.3));
  CHECK(res.table[3].gamma == doctest::Approx(0.35));
  double best = std::numeric_limits<double>::infinity();
  double bg = 0, bb = 0;
  for (const auto& row : res.table) {
    if (std::isfinite(row.cv) && row.cv < best) {
      best = row.cv;
      bg = row.gamma;
      bb = row.beta;
    }
  }
  CHECK(res.gamma_opt == doctest::Approx(bg));
  CHECK(res.beta_opt == doctest::Approx(bb));
}

TEST_CASE("fold assignment is deterministic") {
  SimulationConfig cfg = SimulationConfig::standard(8, 25.0, 1.0, 54);
  SpatialSample s = generate_dataset(cfg);
  CvScore a = cv_score(s, 0.25, 0.25, 8);
  CvScore b = cv_score(s, 0.25, 0.25, 8);
  CHECK(a.value == b.value);
  CHECK(a.failed_folds == b.failed_folds);
}
