#include "spatsel/simulator.hpp"

#include <cmath>
#include <numbers>

namespace spatsel {

SimulationConfig SimulationConfig::standard(int n, double a, double kappa2,
                                            std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.a = a;
  cfg.kappa2 = kappa2;
  cfg.seed = seed;
  cfg.b = Matrix(1, 6);
  cfg.b << 3, 5, 4, 6, 0, 0;
  return cfg;
}

void SimulationConfig::validate() const {
  if (n < 2) throw Error("SimulationConfig: n must be >= 2");
  if (!(a > 0.0)) throw Error("SimulationConfig: a must be positive");
  if (!(kappa2 >= 0.0)) throw Error("SimulationConfig: kappa2 must be >= 0");
  if (b.rows() < 1 || b.cols() < 2)
    throw Error("SimulationConfig: B must be q x p with p >= 2");
  if (n_terms < 1) throw Error("SimulationConfig: n_terms must be >= 1");
  detail::require_finite(b, "SimulationConfig B");
}

double spatial_weight(int i, int j, int n, double a) {
  if (n == 1) return 1.0;
  if (a >= kIndependentRange) return 1.0;
  double sum = 0.0;
  for (int m = 1; m <= n; ++m) {
    const double di = static_cast<double>(i - m) * (i - m);
    for (int l = 1; l <= n; ++l) {
      const double dj = static_cast<double>(j - l) * (j - l);
      sum += std::exp(-std::sqrt(di + dj) / a);
    }
  }
  return sum / (static_cast<double>(n) * n);
}

std::vector<double> spatial_weight_grid(int n, double a) {
  std::vector<double> w(static_cast<size_t>(n) * n);
  if (a >= kIndependentRange) {
    std::fill(w.begin(), w.end(), 1.0);
    return w;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      w[static_cast<size_t>(i - 1) * n + (j - 1)] = spatial_weight(i, j, n, a);
  return w;
}

Matrix generate_covariates(const SimulationConfig& cfg, Rng& rng) {
  return generate_covariates(cfg, rng, spatial_weight_grid(cfg.n, cfg.a));
}

Matrix generate_covariates(const SimulationConfig& cfg, Rng& rng,
                           const std::vector<double>& weights) {
  cfg.validate();
  const int n = cfg.n;
  const int sites = n * n;
  const int terms = cfg.n_terms;
  const int p = static_cast<int>(cfg.b.cols());

  std::normal_distribution<double> freq(0.0, std::sqrt(cfg.freq_sd2));
  std::uniform_real_distribution<double> phase(-std::numbers::pi,
                                               std::numbers::pi);
  Vector w1(terms), w2(terms), qv(terms), rv(terms);
  for (int l = 0; l < terms; ++l) w1[l] = freq(rng);
  for (int l = 0; l < terms; ++l) w2[l] = freq(rng);
  for (int l = 0; l < terms; ++l) qv[l] = freq(rng);
  for (int l = 0; l < terms; ++l) rv[l] = phase(rng);

  // X = D .* scale * (cos(base) cos(qt) - sin(base) sin(qt)) with
  // base = w1 i + w2 j + r summed over the series terms.
  Matrix cos_base(sites, terms), sin_base(sites, terms);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int row = (i - 1) * n + (j - 1);
      for (int l = 0; l < terms; ++l) {
        const double ang = w1[l] * i + w2[l] * j + rv[l];
        cos_base(row, l) = std::cos(ang);
        sin_base(row, l) = std::sin(ang);
      }
    }
  }
  Matrix cos_qt(terms, p), sin_qt(terms, p);
  for (int k = 0; k < p; ++k) {
    const double t = cfg.t_offset(k + 1);
    for (int l = 0; l < terms; ++l) {
      cos_qt(l, k) = std::cos(qv[l] * t);
      sin_qt(l, k) = std::sin(qv[l] * t);
    }
  }
  Matrix x = (cos_base * cos_qt - sin_base * sin_qt) * cfg.series_scale;
  for (int row = 0; row < sites; ++row) x.row(row) *= weights[row];
  return x;
}

ErrorFieldFactor::ErrorFieldFactor(int n) : n_(n) {
  const int sites = n * n;
  if (sites > 4096)
    throw GridTooLarge("error field: n^2 = " + std::to_string(sites) +
                       " exceeds the dense factorization bound 4096");
  Matrix cov(sites, sites);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int s = (i - 1) * n + (j - 1);
      for (int m = 1; m <= n; ++m)
        for (int l = 1; l <= n; ++l) {
          const int t = (m - 1) * n + (l - 1);
          const double d2 = static_cast<double>(i - m) * (i - m) +
                            static_cast<double>(j - l) * (j - l);
          cov(s, t) = std::exp(-d2 / 9.0);
        }
    }
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    cov.diagonal().array() += 1e-10;
    llt.compute(cov);
    if (llt.info() != Eigen::Success)
      throw Error("error field: covariance factorization failed with jitter");
  }
  chol_ = llt.matrixL();
}

Vector ErrorFieldFactor::draw(double kappa2, Rng& rng) const {
  const int sites = n_ * n_;
  Vector z(sites);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < sites; ++s) z[s] = gauss(rng);
  if (kappa2 == 0.0) return Vector::Zero(sites);
  return std::sqrt(kappa2) * (chol_ * z);
}

Vector generate_errors(const SimulationConfig& cfg, Rng& rng) {
  return generate_errors(cfg, rng, ErrorFieldFactor(cfg.n));
}

Vector generate_errors(const SimulationConfig& cfg, Rng& rng,
                       const ErrorFieldFactor& factor) {
  cfg.validate();
  if (factor.grid_side() != cfg.n)
    throw Error("generate_errors: factor grid side mismatch");
  return factor.draw(cfg.kappa2, rng);
}

SpatialSample generate_dataset(const SimulationConfig& cfg, Rng& rng,
                               const std::vector<double>& weights,
                               const ErrorFieldFactor& factor) {
  cfg.validate();
  const int q = static_cast<int>(cfg.b.rows());
  SpatialSample sample;
  sample.grid_side = cfg.n;
  sample.grid_dim = 2;
  sample.x = generate_covariates(cfg, rng, weights);
  sample.y = sample.x * cfg.b.transpose();
  for (int c = 0; c < q; ++c) {
    Vector eps = generate_errors(cfg, rng, factor);
    sample.y.col(c) += eps;
  }
  return sample;
}

SpatialSample generate_dataset(const SimulationConfig& cfg) {
  Rng rng(cfg.seed);
  return generate_dataset(cfg, rng, spatial_weight_grid(cfg.n, cfg.a),
                          ErrorFieldFactor(cfg.n));
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> labels) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (std::uint64_t l : labels) h = mix(h ^ mix(l));
  return h;
}

}  // namespace spatsel
