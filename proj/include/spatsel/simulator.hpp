#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spatsel/estimation.hpp"

namespace spatsel {

// a >= kIndependentRange is treated as the independent-weight limit
// (every spatial weight equals 1).
inline constexpr double kIndependentRange = 1e9;

// Data-generating process on the 2-D grid {1,...,n}^2: spatially
// weighted cosine covariate fields and a Gaussian error field.
struct SimulationConfig {
  int n = 12;               // grid side
  double a = 25.0;          // dependence range, > 0
  double kappa2 = 1.0;      // error variance, >= 0
  Matrix b;                 // q x p coefficient matrix
  std::uint64_t seed = 0;   // master seed
  int n_terms = 1000;       // cosine series length
  double series_scale = 1.0 / std::sqrt(500.0);
  double freq_sd2 = 0.25;   // variance of the w and q(l) draws

  // t_k = 1 + 1.5 (k - 1), k = 1..p.
  double t_offset(int k) const { return 1.0 + 1.5 * (k - 1); }

  // B = (3,5,4,6,0,0), the standard q=1, p=6 setting.
  static SimulationConfig standard(int n, double a, double kappa2,
                                   std::uint64_t seed);

  void validate() const;
};

using Rng = std::mt19937_64;

// D_{(i,j)} = n^-2 sum_{(m,l)} exp(-sqrt((i-m)^2+(j-l)^2)/a).
double spatial_weight(int i, int j, int n, double a);

// All n^2 weights in lexicographic site order. Deterministic in (n, a)
// and worth caching across replications.
std::vector<double> spatial_weight_grid(int n, double a);

// Covariate fields: row s holds X_{(i,j)} for the s-th lexicographic
// site. One (w, q, r) coefficient draw is shared by every site and
// coordinate of the returned dataset.
Matrix generate_covariates(const SimulationConfig& cfg, Rng& rng);
Matrix generate_covariates(const SimulationConfig& cfg, Rng& rng,
                           const std::vector<double>& weights);

// Holds the Cholesky factor of the unit-variance error covariance
// exp(-||s-t||^2/9) for one grid side; reusable across replications
// and noise levels (kappa only rescales).
class ErrorFieldFactor {
 public:
  // Throws GridTooLarge when n^2 exceeds 4096. Adds diagonal jitter
  // 1e-10 if the plain factorization fails.
  explicit ErrorFieldFactor(int n);
  int grid_side() const { return n_; }
  // One centered draw with Cov(e_s, e_t) = kappa2 exp(-||s-t||^2/9).
  Vector draw(double kappa2, Rng& rng) const;

 private:
  int n_;
  Matrix chol_;  // lower factor
};

Vector generate_errors(const SimulationConfig& cfg, Rng& rng);
Vector generate_errors(const SimulationConfig& cfg, Rng& rng,
                       const ErrorFieldFactor& factor);

// y = B x + eps sitewise; deterministic given (cfg.seed, cfg).
SpatialSample generate_dataset(const SimulationConfig& cfg);
// Variant with precomputed per-grid tables, for Monte Carlo loops.
SpatialSample generate_dataset(const SimulationConfig& cfg, Rng& rng,
                               const std::vector<double>& weights,
                               const ErrorFieldFactor& factor);

// splitmix64-based stream derivation: mixes the master seed with an
// arbitrary list of labels. Used to give every replication and purpose
// its own statistically independent stream.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> labels);

}  // namespace spatsel
